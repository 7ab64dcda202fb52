#pragma once

#include <string>
#include <vector>

#include "borelcalc/expfun.hpp"
#include "borelcalc/numerics.hpp"
#include "borelcalc/symbols.hpp"

namespace borelcalc {

struct DecayAbscissas {
  double X_plus = 0.0;   // g(t)e^{−ξt} integrable on t > 0 for ξ > X_plus
  double X_minus = 0.0;  // g(t)e^{−ξt} integrable on t < 0 for ξ < X_minus
  std::vector<std::string> warnings;
};

/// Least-squares slope of log(envelope) on the outer 25% of samples at each
/// end, the envelope being the maximum of |g| over consecutive blocks of 8.
/// Results are clamped to [−50, 50]; an all-zero tail clamps with a warning.
/// Throws TailTooShort when a tail has fewer than 32 samples.
DecayAbscissas estimate_decay_abscissas(const SampledSignal& g);

struct StripMin {
  double epsilon = 0.0;
  cx argmin{0.0, 0.0};
};

/// Minimum of |φ| over ξ ∈ [xi_minus, xi_plus] (33 values) and
/// Y0 ≤ |η| ≤ Y_max (step ≤ 0.05), refined by Newton from the best grid
/// points. Throws StripViolation when the minimum is below 1e−6.
StripMin strip_min_check(const Symbol& phi, double xi_minus, double xi_plus, double Y0, double Y_max);

/// Default Y_max for a grid spacing: max(200, 8π/dx).
double default_y_max(double dx);

struct StripConfig {
  double X_plus = 0.0;
  double X_minus = 0.0;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  double Y0 = 0.0;
  double epsilon = 0.0;
  std::vector<std::string> warnings;
};

/// Estimates the abscissas, checks xi_plus > X_plus and xi_minus < X_minus
/// (BadRange otherwise) and runs strip_min_check.
StripConfig configure_strip(const Symbol& phi, const SampledSignal& g, double xi_minus, double xi_plus, double Y0);

struct FftSolveOptions {
  std::size_t pad_factor = 4;
};

struct FftSolveResult {
  SampledSignal f;
  std::vector<std::string> warnings;
};

/// Two-sided windowed-FFT solution of φ(d/dx)f = g. g is split at x = 0
/// (the x = 0 sample shared equally), each half is weighted by e^{−ξx} with
/// its own abscissa, zero padded, divided by φ(ξ + is) bin by bin and
/// re-weighted. The output covers the central half of the padded grid.
FftSolveResult fft_solve(const Symbol& phi, const SampledSignal& g, const StripConfig& cfg,
                         const FftSolveOptions& opts = {});

struct BoxOptions {
  double xi_minus = -1.0;
  double xi_plus = 1.0;
  double tol = 1e-8;
};

struct BoxSolveResult {
  std::vector<cx> f;           // at the requested points
  std::vector<cx> horizontal;  // contribution of the top and bottom sides
  std::vector<cx> vertical;    // contribution of the left and right sides
  double est_error = 0.0;
  std::size_t nodes_used = 0;
};

/// (1/2πi)∮ e^{xζ}B(g)(ζ)/φ(ζ)dζ over the rectangle [ξ−, ξ+] × [−Y, Y].
/// B(g) comes from the samples: ∫_0^∞ g e^{−ζx} where Re ζ ≥ 0 and
/// −∫_{−∞}^0 g e^{−ζx} where Re ζ < 0, each integrating the piecewise-linear
/// interpolant exactly.
BoxSolveResult box_contour_solve(const Symbol& phi, const SampledSignal& g, double Y, const std::vector<double>& xs,
                                 const BoxOptions& opts = {});

}  // namespace borelcalc

#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "borelcalc/numerics.hpp"
#include "borelcalc/symbols.hpp"

namespace borelcalc {

struct Zero {
  cx zeta{0.0, 0.0};
  std::size_t multiplicity = 1;
};

struct ZeroSet {
  double disk_radius = 0.0;
  std::vector<Zero> zeros;

  std::size_t total() const;
  /// Each zero repeated by multiplicity.
  std::vector<cx> expanded() const;
};

/// (1/2πi)∮ φ'/φ dζ without rounding. Throws ZeroOnContour when a node lies
/// within Newton distance |φ/φ'| < 1e−10·max(1, |ζ|) of a zero.
cx argument_integral(const Symbol& phi, const Contour& contour, const QuadratureOptions& opts = {});

/// Nearest integer to the argument integral; throws NonConvergence when it
/// is more than 0.1 away from an integer.
std::size_t count_zeros(const Symbol& phi, const Contour& contour, const QuadratureOptions& opts = {});

/// Zeros in |ζ| ≤ R by quadtree subdivision of the bounding square. R is
/// nudged by ±1e−3·R when a zero sits on the circle; the radius actually
/// used is reported in disk_radius.
ZeroSet find_zeros(const Symbol& phi, double R);

struct CountingFunctions {
  std::vector<double> r;
  std::vector<std::size_t> n;  // #{|ζ| < r}
  std::vector<double> N;       // Σ_{|ζ|<r} log(r/|ζ|)
};

/// Throws ZeroAtOrigin if 0 ∈ Z.
CountingFunctions counting_functions(const std::vector<cx>& Z, const std::vector<double>& r_grid);
CountingFunctions counting_functions(const ZeroSet& Z, const std::vector<double>& r_grid);

/// Least-squares slope of log n_Z(r) against log r over [R_max/10, R_max]
/// on 200 log-spaced radii. Throws TooFewZeros below 50 zeros.
double exponent_of_convergence(const std::vector<cx>& Z, double R_max);

enum class LevinsonVerdict { DenseIndicated, Bounded, Decreasing };
std::string_view to_string(LevinsonVerdict v);

struct LevinsonResult {
  double margin = 0.0;  // max over the grid of N_Z(r) − |I|r/π + ln(r)/2
  double trend = 0.0;   // change of that quantity over [r_max/10, r_max]
  LevinsonVerdict verdict = LevinsonVerdict::Bounded;
};

/// The trend is compared with ln r_max: larger means dense-indicated,
/// below its negative means decreasing, otherwise bounded.
LevinsonResult levinson_check(const std::vector<cx>& Z, double interval_length, double r_max);

enum class GrowthVerdict { UnboundedIndicated, Bounded };
std::string_view to_string(GrowthVerdict v);

struct TgbResult {
  double slope = 0.0;  // least-squares slope of N_Z(r)/r against log r, top decade
  GrowthVerdict verdict = GrowthVerdict::Bounded;
};

/// Positive slope of N_Z(r)/r over the top decade of the grid is reported
/// as unbounded-indicated. A finite-data trend, not a limit.
TgbResult tgb_diagnostic(const std::vector<cx>& Z, const std::vector<double>& r_grid);

struct DensityReport {
  CountingFunctions counts;
  double linear_slope = 0.0;  // min of N_Z(r)/r over the grid
  double exponent_estimate = 0.0;
  LevinsonResult levinson;
  TgbResult growth;
};
DensityReport density_report(const std::vector<cx>& Z, const std::vector<double>& r_grid, double interval_length);

/// ∪_{m ≤ m_max} {r_m·n : n ∈ ℤ∖{0}, |r_m n| ≤ radius} with
/// r_m = m + 1/2 + √2/10^m, pairwise irrational ratios in (m, 2m).
std::vector<cx> lattice_union_family(std::size_t m_max, double radius);

/// n log-spaced radii from a to b inclusive.
std::vector<double> log_grid(double a, double b, std::size_t n);

}  // namespace borelcalc

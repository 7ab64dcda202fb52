#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "borelcalc/expfun.hpp"
#include "borelcalc/numerics.hpp"

namespace borelcalc {

/// Σ_j residues[j]/(ζ−λ)^{j+1} for one pole λ.
struct PoleTerm {
  cx pole{0.0, 0.0};
  std::vector<cx> residues;
};

/// Partial-fraction form of the transform of an exponential polynomial.
/// Poles are kept as a list and never multiplied out.
struct RationalBorel {
  std::vector<PoleTerm> terms;
  cx operator()(cx zeta) const;
};

/// ζ ↦ B(f)(ζ), trusted for |ζ| > valid_radius.
struct BorelRep {
  std::function<cx(cx)> eval;
  double valid_radius = 0.0;
  std::optional<RationalBorel> closed_form;

  cx operator()(cx zeta) const { return eval(zeta); }
  /// Smallest circle (center, radius) containing every singularity: the
  /// pole set for closed forms, the disk |ζ| ≤ valid_radius otherwise.
  Circle singular_hull() const;
};

struct BorelValue {
  cx value{0.0, 0.0};
  double est_error = 0.0;
};

/// Σ_{k<K} k! b_k/ζ^{k+1} with a geometric tail estimate. Throws
/// OutsideDomain when |ζ| ≤ tau and NonConvergence when the tail exceeds
/// tol·max(1, |value|).
BorelValue borel_series(const TaylorRep& f, cx zeta, std::size_t K = 128, double tol = 1e-10);

/// Closed form with B(x^m e^{λx}) = m!/(ζ−λ)^{m+1}.
BorelRep borel_exppoly(const ExpPoly& f);

/// Transform of a TaylorRep evaluated through borel_series.
BorelRep borel_taylor(const TaylorRep& f, std::size_t K = 128);

/// e^{iθ}∫_0^∞ f(t e^{iθ}) e^{−ζ e^{iθ} t} dt, integrated on unit-width
/// Gauss–Legendre panels until a whole panel of the integrand falls below
/// 1e−14·max(1, |partial sum|). Throws NoDecay if that never happens
/// before t_max.
cx borel_laplace(const std::function<cx(cx)>& f, double theta, cx zeta, double t_max = 4000.0);

/// (1/2πi)∮ e^{xζ}B(ζ)dζ on the given circle.
QuadratureResult inverse_borel(const BorelRep& B, const Circle& circle, cx x,
                               const QuadratureOptions& opts = {});
QuadratureResult inverse_borel(const BorelRep& B, double R, cx x, const QuadratureOptions& opts = {});
/// Same integral for many x at once.
VectorQuadratureResult inverse_borel(const BorelRep& B, const Circle& circle, const std::vector<cx>& xs,
                                     const QuadratureOptions& opts = {});

/// density(θ) = B(Re^{iθ})·Re^{iθ}/(2π). Throws OutsideDomain unless
/// R > valid_radius.
SpectralMeasure spectral_measure_from_borel(const BorelRep& B, double R);

}  // namespace borelcalc

#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "borelcalc/numerics.hpp"

namespace borelcalc {

/// One term p(x)·e^{ζx}; poly holds p's coefficients in ascending powers.
struct ExpAtom {
  cx zeta{0.0, 0.0};
  std::vector<cx> poly;
};

/// Finite sum Σ p_k(x) e^{ζ_k x}. The constructor merges atoms whose
/// exponents coincide, trims trailing zero coefficients and drops atoms
/// that vanish, so the zero function has no atoms.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<ExpAtom> atoms);

  static ExpPoly exponential(cx zeta, cx coeff = 1.0);
  /// Σ coeffs[m] x^m.
  static ExpPoly polynomial(std::vector<cx> coeffs);

  const std::vector<ExpAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  cx operator()(cx x) const;
  /// d^j/dx^j evaluated at x.
  cx derivative(std::size_t j, cx x) const;
  ExpPoly derivative() const;

  /// max |ζ_k|, the exponential type.
  double type() const;
  /// First n Taylor coefficients about 0.
  std::vector<cx> taylor(std::size_t n) const;

  friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(cx s, const ExpPoly& a);

 private:
  std::vector<ExpAtom> atoms_;
};

/// Truncated power series Σ b_k x^k of an entire function with type ≤ tau.
struct TaylorRep {
  std::vector<cx> b;
  double tau = 0.0;

  static constexpr std::size_t kDefaultLength = 128;
  static TaylorRep from_exppoly(const ExpPoly& f, std::size_t n = kDefaultLength);

  /// Largest |x| at which the Stirling bound on the dropped tail stays below
  /// tol·max(1, A), where |b_k| ≤ A·T^k/k! is fitted on the prefix.
  /// Returns +∞ when the prefix is an exact polynomial.
  double evaluation_radius(double tol = 1e-12) const;
  /// Throws TruncationError when |x| exceeds evaluation_radius().
  cx operator()(cx x) const;
  cx derivative(std::size_t j, cx x) const;
};

/// Either exact representation; evaluation dispatches.
using ExpFunction = std::variant<ExpPoly, TaylorRep>;
cx evaluate(const ExpFunction& f, cx x);
cx evaluate_derivative(const ExpFunction& f, std::size_t j, cx x);
double type_bound(const ExpFunction& f);

/// Uniform samples values[i] = f(x0 + i·dx).
struct SampledSignal {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<cx> values;

  double x(std::size_t i) const { return x0 + double(i) * dx; }
  std::size_t size() const { return values.size(); }
  /// Throws BadRange unless dx > 0 and size ≥ min_size, NonFinite on
  /// NaN/∞ samples.
  void validate(std::size_t min_size = 16) const;
};

/// max over 8 ≤ k ≤ min(K, len−1) of (k!|b_k|)^{1/k}; zero coefficients are
/// skipped, so polynomials report 0.
double exp_type_estimate(const TaylorRep& f, std::size_t K);

/// Σ p_k(−∂_ξ)δ_{ζ_k}: a finite atomic distribution with polynomial weights.
struct AtomicDistribution {
  std::vector<ExpAtom> atoms;
};

/// dμ = density(θ) dθ on the circle |ζ| = radius.
struct SpectralMeasure {
  double radius = 1.0;
  std::function<cx(double)> density;
  std::size_t nodes = 32;
};

AtomicDistribution to_atomic(const ExpPoly& f);

/// ⟨e^{xζ}, d⟩.
cx p_transform(const AtomicDistribution& d, cx x);
cx p_transform(const SpectralMeasure& mu, cx x, const QuadratureOptions& opts = {});

}  // namespace borelcalc

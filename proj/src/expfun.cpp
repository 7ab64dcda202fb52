#include "borelcalc/expfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "borelcalc/error.hpp"

namespace borelcalc {

namespace {

cx horner(const std::vector<cx>& c, cx x) {
  cx acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

std::vector<cx> poly_derivative(const std::vector<cx>& p) {
  if (p.size() <= 1) return {};
  std::vector<cx> d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = double(k) * p[k];
  return d;
}

void trim(std::vector<cx>& p) {
  while (!p.empty() && p.back() == 0.0) p.pop_back();
}

double log_factorial(std::size_t k) { return std::lgamma(double(k) + 1.0); }

}  // namespace

// ---------------------------------------------------------------------------

ExpPoly::ExpPoly(std::vector<ExpAtom> atoms) {
  for (auto& a : atoms) {
    auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const ExpAtom& b) { return b.zeta == a.zeta; });
    if (it == atoms_.end()) {
      atoms_.push_back(std::move(a));
      continue;
    }
    if (it->poly.size() < a.poly.size()) it->poly.resize(a.poly.size(), 0.0);
    for (std::size_t k = 0; k < a.poly.size(); ++k) it->poly[k] += a.poly[k];
  }
  for (auto& a : atoms_) trim(a.poly);
  std::erase_if(atoms_, [](const ExpAtom& a) { return a.poly.empty(); });
}

ExpPoly ExpPoly::exponential(cx zeta, cx coeff) { return ExpPoly({ExpAtom{zeta, {coeff}}}); }

ExpPoly ExpPoly::polynomial(std::vector<cx> coeffs) { return ExpPoly({ExpAtom{0.0, std::move(coeffs)}}); }

cx ExpPoly::operator()(cx x) const {
  cx acc = 0.0;
  for (const auto& a : atoms_) acc += horner(a.poly, x) * std::exp(a.zeta * x);
  return acc;
}

ExpPoly ExpPoly::derivative() const {
  // (p e^{ζx})' = (p' + ζp) e^{ζx}
  std::vector<ExpAtom> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    std::vector<cx> q(a.poly.size(), 0.0);
    for (std::size_t k = 0; k < a.poly.size(); ++k) q[k] = a.zeta * a.poly[k];
    const auto dp = poly_derivative(a.poly);
    for (std::size_t k = 0; k < dp.size(); ++k) q[k] += dp[k];
    out.push_back({a.zeta, std::move(q)});
  }
  return ExpPoly(std::move(out));
}

cx ExpPoly::derivative(std::size_t j, cx x) const {
  ExpPoly d = *this;
  for (std::size_t k = 0; k < j; ++k) d = d.derivative();
  return d(x);
}

double ExpPoly::type() const {
  double t = 0.0;
  for (const auto& a : atoms_) t = std::max(t, std::abs(a.zeta));
  return t;
}

std::vector<cx> ExpPoly::taylor(std::size_t n) const {
  // x^j e^{ζx} contributes ζ^{k−j}/(k−j)! to b_k.
  std::vector<cx> b(n, 0.0);
  for (const auto& a : atoms_) {
    std::vector<cx> e(n, 0.0);
    if (n > 0) e[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) e[k] = e[k - 1] * a.zeta / double(k);
    for (std::size_t j = 0; j < a.poly.size() && j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) b[k] += a.poly[j] * e[k - j];
    }
  }
  return b;
}

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpAtom> all = a.atoms_;
  all.insert(all.end(), b.atoms_.begin(), b.atoms_.end());
  return ExpPoly(std::move(all));
}

ExpPoly operator*(cx s, const ExpPoly& a) {
  std::vector<ExpAtom> all = a.atoms_;
  for (auto& atom : all) {
    for (auto& c : atom.poly) c *= s;
  }
  return ExpPoly(std::move(all));
}

ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + cx(-1.0) * b; }

// ---------------------------------------------------------------------------

TaylorRep TaylorRep::from_exppoly(const ExpPoly& f, std::size_t n) { return {f.taylor(n), f.type()}; }

double TaylorRep::evaluation_radius(double tol) const {
  const std::size_t K = b.size();
  if (K == 0) return std::numeric_limits<double>::infinity();
  // Coefficients identically zero beyond a degree and tau = 0: exact polynomial.
  if (tau == 0.0) return std::numeric_limits<double>::infinity();
  const double T = tau;
  // log A = max_k log(|b_k| k! / T^k) over the upper half of the prefix,
  // where the asymptotic regime has set in.
  double logA = -std::numeric_limits<double>::infinity();
  for (std::size_t k = K / 2; k < K; ++k) {
    if (b[k] == 0.0) continue;
    logA = std::max(logA, std::log(std::abs(b[k])) + log_factorial(k) - double(k) * std::log(T));
  }
  if (!std::isfinite(logA)) logA = 0.0;
  const double log_budget = std::log(tol) + std::max(0.0, logA);
  // tail(r) ≤ A (Tr)^K / K! / (1 − Tr/(K+1)), valid for Tr < K+1.
  const auto log_tail = [&](double r) {
    const double q = T * r / double(K + 1);
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return logA + double(K) * std::log(T * r) - log_factorial(K) - std::log1p(-q);
  };
  double lo = 0.0, hi = double(K + 1) / T;
  if (log_tail(hi * 1e-12) > log_budget) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (log_tail(mid) <= log_budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

cx TaylorRep::operator()(cx x) const { return derivative(0, x); }

cx TaylorRep::derivative(std::size_t j, cx x) const {
  const double r = evaluation_radius();
  if (std::abs(x) > r) {
    throw Error(ErrorKind::TruncationError, "|x| = " + std::to_string(std::abs(x)) +
                                                " exceeds the series evaluation radius " + std::to_string(r));
  }
  if (j >= b.size()) return 0.0;
  std::vector<cx> d(b.begin() + std::ptrdiff_t(j), b.end());
  for (std::size_t k = 0; k < d.size(); ++k) {
    double falling = 1.0;
    for (std::size_t m = 0; m < j; ++m) falling *= double(k + j - m);
    d[k] *= falling;
  }
  return horner(d, x);
}

cx evaluate(const ExpFunction& f, cx x) {
  return std::visit([&](const auto& g) { return g(x); }, f);
}

cx evaluate_derivative(const ExpFunction& f, std::size_t j, cx x) {
  return std::visit([&](const auto& g) { return g.derivative(j, x); }, f);
}

double type_bound(const ExpFunction& f) {
  if (const auto* p = std::get_if<ExpPoly>(&f)) return p->type();
  return std::get<TaylorRep>(f).tau;
}

double exp_type_estimate(const TaylorRep& f, std::size_t K) {
  const std::size_t top = std::min(K, f.b.size() - 1);
  double best = 0.0;
  for (std::size_t k = 8; k <= top && k < f.b.size(); ++k) {
    if (f.b[k] == 0.0) continue;
    best = std::max(best, std::exp((log_factorial(k) + std::log(std::abs(f.b[k]))) / double(k)));
  }
  return best;
}

void SampledSignal::validate(std::size_t min_size) const {
  if (!(dx > 0.0)) throw Error(ErrorKind::BadRange, "sample spacing must be positive");
  if (values.size() < min_size) {
    throw Error(ErrorKind::BadRange, "signal needs at least " + std::to_string(min_size) + " samples");
  }
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::NonFinite, "signal contains a non-finite sample");
    }
  }
}

AtomicDistribution to_atomic(const ExpPoly& f) { return {f.atoms()}; }

cx p_transform(const AtomicDistribution& d, cx x) {
  // ⟨e^{xζ}, p(−∂_ξ)δ_λ⟩ = p(x) e^{λx}
  cx acc = 0.0;
  for (const auto& a : d.atoms) acc += horner(a.poly, x) * std::exp(a.zeta * x);
  return acc;
}

cx p_transform(const SpectralMeasure& mu, cx x, const QuadratureOptions& opts) {
  // ∫ e^{xζ} density(θ) dθ written as (1/2πi)∮ 2π e^{xζ} density(arg ζ)/ζ dζ.
  const auto integrand = [&](cx zeta) { return 2.0 * kPi * std::exp(x * zeta) * mu.density(std::arg(zeta)) / zeta; };
  return contour_integrate(integrand, Circle{0.0, mu.radius, mu.nodes}, opts).value;
}

}  // namespace borelcalc

#include "borelcalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "borelcalc/borel.hpp"
#include "borelcalc/error.hpp"
#include "borelcalc/kernels.hpp"
#include "borelcalc/spectral.hpp"

namespace borelcalc {

namespace {

std::vector<cx> poly_derivative(const std::vector<cx>& p) {
  if (p.size() <= 1) return {};
  std::vector<cx> d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = double(k) * p[k];
  return d;
}

// Fornberg's finite-difference weights for derivative `order` at 0 on the
// integer offsets −h..h (unit spacing).
std::vector<double> fd_weights(std::size_t order, int h) {
  const int n = 2 * h + 1;
  const std::size_t m = order;
  std::vector<std::vector<double>> c(std::size_t(n), std::vector<double>(m + 1, 0.0));
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[std::size_t(i)] = double(i - h);
  double c1 = 1.0, c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(std::size_t(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[std::size_t(i)];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[std::size_t(i)] - x[std::size_t(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[std::size_t(i)][k] = c1 * (double(k) * c[std::size_t(i - 1)][k - 1] - c5 * c[std::size_t(i - 1)][k]) / c2;
        }
        c[std::size_t(i)][0] = -c1 * c5 * c[std::size_t(i - 1)][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[std::size_t(j)][k] = (c4 * c[std::size_t(j)][k] - double(k) * c[std::size_t(j)][k - 1]) / c3;
      }
      c[std::size_t(j)][0] = c4 * c[std::size_t(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[std::size_t(i)] = c[std::size_t(i)][m];
  return w;
}

int stencil_half_width(std::size_t order) { return order == 0 ? 0 : 4 + int((order - 1) / 2); }

class ConvolutionSymbol final : public SymbolImpl {
 public:
  ConvolutionSymbol(std::function<double(double)> u, double a, double b, std::size_t panels)
      : u_(std::move(u)), a_(a), b_(b), panels_(panels) {}

  cx eval(cx z) const override { return moment(0, z); }
  std::vector<cx> taylor(std::size_t n) const override {
    std::vector<cx> out(n);
    double fact = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) fact *= double(k);
      out[k] = moment(k, 0.0) / fact;
    }
    return out;
  }
  std::optional<cx> exact_derivative(std::size_t j, cx z) const override { return moment(j, z); }
  std::string describe() const override {
    std::ostringstream os;
    os << "convolution[" << a_ << "," << b_ << "]";
    return os.str();
  }

 private:
  // ∫ (−x)^j e^{−zx} u(x) dx
  cx moment(std::size_t j, cx z) const {
    const auto f = [&](double x) -> cx {
      return std::pow(-x, double(j)) * std::exp(-z * x) * u_(x);
    };
    return integrate_panels(std::function<cx(double)>(f), a_, b_, panels_);
  }
  std::function<double(double)> u_;
  double a_, b_;
  std::size_t panels_;
};

class SampledConvolutionSymbol final : public SymbolImpl {
 public:
  explicit SampledConvolutionSymbol(SampledSignal u) : u_(std::move(u)) {}

  cx eval(cx z) const override {
    cx out;
    const cx zs[1] = {z};
    kernels::laplace_filon_serial(u_.x0, u_.dx, u_.values, zs, std::span<cx>(&out, 1));
    return out;
  }
  std::vector<cx> taylor(std::size_t n) const override {
    std::vector<cx> out(n, 0.0);
    double fact = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) fact *= double(k);
      cx acc = 0.0;
      for (std::size_t i = 0; i < u_.size(); ++i) {
        const double w = (i == 0 || i + 1 == u_.size()) ? 0.5 : 1.0;
        acc += w * std::pow(-u_.x(i), double(k)) * u_.values[i];
      }
      out[k] = acc * u_.dx / fact;
    }
    return out;
  }
  std::optional<cx> exact_derivative(std::size_t, cx) const override { return std::nullopt; }
  std::string describe() const override { return "convolution[sampled]"; }

 private:
  SampledSignal u_;
};

}  // namespace

ExpPoly apply_symbol(const Symbol& phi, const ExpPoly& f) {
  std::vector<ExpAtom> out;
  for (const auto& atom : f.atoms()) {
    std::vector<cx> q(atom.poly.size(), 0.0);
    std::vector<cx> dp = atom.poly;
    double fact = 1.0;
    for (std::size_t j = 0; j < atom.poly.size(); ++j) {
      if (j > 0) {
        fact *= double(j);
        dp = poly_derivative(dp);
      }
      const cx c = phi.derivative(j, atom.zeta) / fact;
      for (std::size_t k = 0; k < dp.size(); ++k) q[k] += c * dp[k];
    }
    out.push_back({atom.zeta, std::move(q)});
  }
  return ExpPoly(std::move(out));
}

TaylorRep apply_symbol(const Symbol& phi, const TaylorRep& f, const QuadratureOptions& opts) {
  const double R = f.tau + 1.0;
  const std::size_t n = f.b.size();
  const auto B = borel_taylor(f);
  const auto integrand = [&](cx zeta, std::span<cx> out) {
    const cx w = eval_symbol(phi, zeta) * B(zeta);
    cx p = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = p * w;
      p *= zeta / double(k + 1);
    }
  };
  auto res = contour_integrate(integrand, n, Circle{0.0, R, 64}, opts);
  return TaylorRep{std::move(res.values), f.tau};
}

ExpFunction apply_symbol(const Symbol& phi, const ExpFunction& f) {
  if (const auto* p = std::get_if<ExpPoly>(&f)) return apply_symbol(phi, *p);
  return apply_symbol(phi, std::get<TaylorRep>(f));
}

PartialSumResult partial_sum_apply(const Symbol& phi, std::size_t K, const SampledSignal& f, double cutoff,
                                   double a, double b) {
  f.validate(2);
  if (!(cutoff > 0.0)) throw Error(ErrorKind::BadRange, "cutoff must be positive");
  const auto coeffs = taylor_coeffs(phi, K + 1);
  double bound = 0.0;
  for (std::size_t k = 0; k <= K; ++k) bound += std::abs(coeffs[k]) * std::pow(cutoff, double(k));
  if (!std::isfinite(bound) || bound > 1e300) {
    throw Error(ErrorKind::CutoffTooLow, "partial-sum multiplier overflows at the frequency cutoff");
  }
  const std::size_t n = f.size();
  auto bins = spectral::forward(f.values);
  std::vector<cx> mult(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = spectral::angular_frequency(k, n, f.dx);
    if (std::abs(w) > cutoff) {
      mult[k] = 0.0;
      continue;
    }
    cx acc = 0.0, p = 1.0;
    for (std::size_t j = 0; j <= K; ++j) {
      acc += coeffs[j] * p;
      p *= cx(0.0, w);
    }
    mult[k] = acc;
  }
  kernels::scale_bins(kernels::default_exec(), bins, mult, false);
  PartialSumResult out;
  out.f_K = SampledSignal{f.x0, f.dx, spectral::inverse(bins)};
  double acc = 0.0;
  double prev = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = f.x(i);
    if (x < a - 1e-12 || x > b + 1e-12) continue;
    const double v = std::abs(out.f_K.values[i]);
    if (prev >= 0.0) acc += 0.5 * (prev + v) * f.dx;
    prev = v;
  }
  out.l1_norm = acc;
  return out;
}

Symbol TranslationDifferentialForm::to_symbol() const {
  ExprPtr total = expr::num(0.0);
  for (const auto& t : terms) {
    ExprPtr p = expr::num(0.0);
    for (std::size_t k = 0; k < t.poly.size(); ++k) {
      p = expr::add(p, expr::mul(expr::num(t.poly[k]), expr::pow(expr::var(), int(k))));
    }
    const ExprPtr shift = t.shift == 0.0 ? expr::num(1.0)
                                         : expr::func(Op::Exp, expr::mul(expr::num(t.shift), expr::var()));
    total = expr::add(total, expr::mul(p, shift));
  }
  return Symbol::from_expr(total);
}

std::size_t TranslationDifferentialForm::max_order() const {
  std::size_t m = 0;
  for (const auto& t : terms) m = std::max(m, t.poly.size());
  return m == 0 ? 0 : m - 1;
}

std::function<cx(cx)> translate_apply(const TranslationDifferentialForm& T, DerivativeEvaluator f) {
  return [T, f = std::move(f)](cx x) {
    cx acc = 0.0;
    for (const auto& t : T.terms) {
      for (std::size_t j = 0; j < t.poly.size(); ++j) {
        if (t.poly[j] != 0.0) acc += t.poly[j] * f(j, x + t.shift);
      }
    }
    return acc;
  };
}

SampledSignal translate_apply(const TranslationDifferentialForm& T, const SampledSignal& f) {
  f.validate(2);
  struct Prepared {
    long shift;
    std::vector<std::vector<double>> weights;  // per derivative order
    std::vector<cx> poly;
  };
  std::vector<Prepared> prep;
  long lo = 0, hi = long(f.size()) - 1;  // valid output index range
  for (const auto& t : T.terms) {
    const double s = t.shift.real() / f.dx;
    const long si = std::lround(s);
    if (std::abs(t.shift.imag()) > 1e-12 || std::abs(s - double(si)) > 1e-9 * std::max(1.0, std::abs(s))) {
      throw Error(ErrorKind::BadRange, "sampled translation needs real shifts on the sample lattice");
    }
    Prepared p{si, {}, t.poly};
    int h = 0;
    for (std::size_t j = 0; j < t.poly.size(); ++j) {
      const int hj = stencil_half_width(j);
      h = std::max(h, hj);
      auto w = fd_weights(j, hj);
      const double scale = std::pow(f.dx, -double(j));
      for (auto& v : w) v *= scale;
      p.weights.push_back(std::move(w));
    }
    lo = std::max(lo, -si + h);
    hi = std::min(hi, long(f.size()) - 1 - si - h);
    prep.push_back(std::move(p));
  }
  if (lo > hi) throw Error(ErrorKind::BadRange, "signal too short for the requested shifts and stencils");
  SampledSignal out{f.x(std::size_t(lo)), f.dx, std::vector<cx>(std::size_t(hi - lo + 1), 0.0)};
  for (long i = lo; i <= hi; ++i) {
    cx acc = 0.0;
    for (const auto& p : prep) {
      const long c = i + p.shift;
      for (std::size_t j = 0; j < p.poly.size(); ++j) {
        if (p.poly[j] == 0.0) continue;
        const auto& w = p.weights[j];
        const long h = long(w.size() / 2);
        cx d = 0.0;
        for (long o = -h; o <= h; ++o) d += w[std::size_t(o + h)] * f.values[std::size_t(c + o)];
        acc += p.poly[j] * d;
      }
    }
    out.values[std::size_t(i - lo)] = acc;
  }
  return out;
}

Symbol convolution_to_symbol(std::function<double(double)> u, double a, double b, std::size_t panels) {
  if (!(a < b)) throw Error(ErrorKind::BadRange, "convolver support must satisfy a < b");
  return Symbol(std::make_shared<ConvolutionSymbol>(std::move(u), a, b, panels));
}

Symbol convolution_to_symbol(const SampledSignal& u) {
  u.validate(2);
  return Symbol(std::make_shared<SampledConvolutionSymbol>(u));
}

SampledSignal fourier_multiplier_apply(const std::function<cx(double)>& psi, const SampledSignal& f) {
  f.validate(2);
  const std::size_t n = f.size();
  auto bins = spectral::forward(f.values);
  std::vector<cx> mult(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = spectral::angular_frequency(k, n, f.dx);
    mult[k] = (n % 2 == 0 && k == n / 2) ? 0.5 * (psi(w) + psi(-w)) : psi(w);
  }
  kernels::scale_bins(kernels::default_exec(), bins, mult, false);
  return SampledSignal{f.x0, f.dx, spectral::inverse(bins)};
}

}  // namespace borelcalc

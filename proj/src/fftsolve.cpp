#include "borelcalc/fftsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "borelcalc/error.hpp"
#include "borelcalc/kernels.hpp"
#include "borelcalc/spectral.hpp"

namespace borelcalc {

namespace {

constexpr double kAbscissaClamp = 50.0;
constexpr double kStripFloor = 1e-6;
constexpr double kLogOverflow = 690.0;  // e^690 ≈ 1e300

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

// Envelope fit over samples [lo, hi); nullopt when the tail is all zero.
std::optional<double> tail_slope(const SampledSignal& g, std::size_t lo, std::size_t hi) {
  std::vector<double> xs, ys;
  for (std::size_t s = lo; s + 8 <= hi; s += 8) {
    double peak = 0.0;
    std::size_t at = s;
    for (std::size_t i = s; i < s + 8; ++i) {
      const double v = std::abs(g.values[i]);
      if (v > peak) {
        peak = v;
        at = i;
      }
    }
    if (peak > 0.0) {
      xs.push_back(g.x(at));
      ys.push_back(std::log(peak));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  return ls_slope(xs, ys);
}

}  // namespace

DecayAbscissas estimate_decay_abscissas(const SampledSignal& g) {
  g.validate(16);
  const std::size_t n = g.size();
  const std::size_t tail = n / 4;
  if (tail < 32) throw Error(ErrorKind::TailTooShort, "each tail needs at least 32 samples");
  DecayAbscissas out;
  if (auto s = tail_slope(g, n - tail, n)) {
    out.X_plus = std::clamp(*s, -kAbscissaClamp, kAbscissaClamp);
  } else {
    out.X_plus = -kAbscissaClamp;
    out.warnings.push_back("right tail is identically zero; X_plus clamped to -50");
  }
  if (auto s = tail_slope(g, 0, tail)) {
    out.X_minus = std::clamp(*s, -kAbscissaClamp, kAbscissaClamp);
  } else {
    out.X_minus = kAbscissaClamp;
    out.warnings.push_back("left tail is identically zero; X_minus clamped to 50");
  }
  return out;
}

double default_y_max(double dx) { return std::max(200.0, 8.0 * kPi / dx); }

StripMin strip_min_check(const Symbol& phi, double xi_minus, double xi_plus, double Y0, double Y_max) {
  if (!(xi_minus <= xi_plus)) throw Error(ErrorKind::BadRange, "strip needs xi_minus <= xi_plus");
  if (!(Y_max > Y0) || Y0 < 0.0) throw Error(ErrorKind::BadRange, "strip scan needs 0 <= Y0 < Y_max");
  constexpr std::size_t kXi = 33;
  const std::size_t n_eta = std::size_t(std::ceil((Y_max - Y0) / 0.05)) + 1;
  const double d_eta = (Y_max - Y0) / double(n_eta - 1);
  std::vector<cx> pts;
  pts.reserve(kXi * n_eta * 2);
  for (std::size_t i = 0; i < kXi; ++i) {
    const double xi = xi_minus + (xi_plus - xi_minus) * double(i) / double(kXi - 1);
    for (std::size_t j = 0; j < n_eta; ++j) {
      const double eta = Y0 + d_eta * double(j);
      pts.emplace_back(xi, eta);
      pts.emplace_back(xi, -eta);
    }
  }
  std::vector<cx> vals(pts.size());
  kernels::evaluate_points(kernels::default_exec(), [&](cx z) { return eval_symbol(phi, z); }, pts, vals);

  StripMin best{1e300, 0.0};
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min<std::size_t>(16, order.size());
  std::partial_sort(order.begin(), order.begin() + std::ptrdiff_t(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = std::abs(vals[a]), vb = std::abs(vals[b]);
                      return va != vb ? va < vb : a < b;
                    });
  best = {std::abs(vals[order[0]]), pts[order[0]]};

  const auto inside = [&](cx z) {
    return z.real() >= xi_minus - 1e-12 && z.real() <= xi_plus + 1e-12 && std::abs(z.imag()) >= Y0 - 1e-12 &&
           std::abs(z.imag()) <= Y_max + 1e-12;
  };
  // Newton toward a nearby zero; any iterate that stays in the region and
  // lowers |φ| improves the estimate.
  for (std::size_t r = 0; r < keep; ++r) {
    cx z = pts[order[r]];
    for (int it = 0; it < 40; ++it) {
      const cx v = eval_symbol(phi, z);
      const double a = std::abs(v);
      if (inside(z) && a < best.epsilon) best = {a, z};
      if (a == 0.0) break;
      const cx d = symbol_derivative(phi, 1, z);
      if (d == 0.0) break;
      const cx next = z - v / d;
      if (!inside(next) || std::abs(next - z) < 1e-15 * std::max(1.0, std::abs(z))) break;
      z = next;
    }
  }
  if (best.epsilon < kStripFloor) {
    throw Error(ErrorKind::StripViolation,
                "|phi| reaches " + std::to_string(best.epsilon) + " at (" + std::to_string(best.argmin.real()) +
                    ", " + std::to_string(best.argmin.imag()) + "); shift xi_minus/xi_plus away from the zero lines");
  }
  return best;
}

StripConfig configure_strip(const Symbol& phi, const SampledSignal& g, double xi_minus, double xi_plus, double Y0) {
  const auto ab = estimate_decay_abscissas(g);
  StripConfig cfg;
  cfg.X_plus = ab.X_plus;
  cfg.X_minus = ab.X_minus;
  cfg.warnings = ab.warnings;
  cfg.xi_minus = xi_minus;
  cfg.xi_plus = xi_plus;
  cfg.Y0 = Y0;
  if (!(xi_plus > cfg.X_plus)) {
    throw Error(ErrorKind::BadRange, "xi_plus must exceed the right decay abscissa " + std::to_string(cfg.X_plus));
  }
  if (!(xi_minus < cfg.X_minus)) {
    throw Error(ErrorKind::BadRange, "xi_minus must be below the left decay abscissa " + std::to_string(cfg.X_minus));
  }
  cfg.epsilon = strip_min_check(phi, std::min(xi_minus, xi_plus), std::max(xi_minus, xi_plus), Y0,
                                default_y_max(g.dx))
                    .epsilon;
  return cfg;
}

FftSolveResult fft_solve(const Symbol& phi, const SampledSignal& g, const StripConfig& cfg,
                         const FftSolveOptions& opts) {
  g.validate(16);
  if (!(cfg.epsilon >= kStripFloor)) {
    throw Error(ErrorKind::StripViolation, "strip configuration has not passed the minimum check");
  }
  if (opts.pad_factor < 2) throw Error(ErrorKind::BadRange, "padding factor must be at least 2");
  const std::size_t n = g.size();
  const std::size_t N = opts.pad_factor * n;
  const std::size_t offset = (N - n) / 2;  // g occupies [offset, offset + n)
  const double X0 = g.x0 - double(offset) * g.dx;
  const auto xp = [&](std::size_t i) { return X0 + double(i) * g.dx; };
  const double zero_tol = 1e-9 * g.dx;

  FftSolveResult out;
  std::vector<cx> total(N, 0.0);
  const auto exec = kernels::default_exec();
  for (int branch = 0; branch < 2; ++branch) {
    const double xi = branch == 0 ? cfg.xi_plus : cfg.xi_minus;
    std::vector<cx> h(N, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = g.x(j);
      double w;
      if (std::abs(x) <= zero_tol) {
        w = 0.5;
      } else if (branch == 0) {
        w = x > 0.0 ? 1.0 : 0.0;
      } else {
        w = x < 0.0 ? 1.0 : 0.0;
      }
      if (w != 0.0) h[offset + j] = w * g.values[j] * std::exp(-xi * x);
    }
    auto bins = spectral::forward(h);
    std::vector<cx> sym(N);
    for (std::size_t k = 0; k < N; ++k) sym[k] = cx(xi, spectral::angular_frequency(k, N, g.dx));
    std::vector<cx> phis(N);
    kernels::evaluate_points(exec, [&](cx z) { return eval_symbol(phi, z); }, sym, phis);
    const auto low = kernels::abs_min(exec, [&](cx z) { return eval_symbol(phi, z); }, sym);
    if (low.value < kStripFloor) {
      throw Error(ErrorKind::StripViolation, "phi nearly vanishes on the line Re z = " + std::to_string(xi) +
                                                 " at a discrete frequency");
    }
    kernels::scale_bins(exec, bins, phis, true);
    const auto u = spectral::inverse(bins);
    for (std::size_t i = 0; i < N; ++i) {
      const double e = xi * xp(i);
      if (e > kLogOverflow) {
        total[i] = cx(NAN, NAN);
      } else if (!std::isnan(total[i].real())) {
        total[i] += u[i] * std::exp(e);
      }
    }
  }
  // Central half, shrunk to where the re-weighting stayed finite.
  std::size_t lo = N / 4, hi = N / 4 + N / 2;
  while (lo < hi && std::isnan(total[lo].real())) ++lo;
  while (hi > lo && std::isnan(total[hi - 1].real())) --hi;
  if (lo != N / 4 || hi != N / 4 + N / 2) {
    out.warnings.push_back("output window shrunk to keep exp(x*xi) below 1e300");
  }
  for (std::size_t i = lo; i < hi; ++i) {
    if (std::isnan(total[i].real())) {
      throw Error(ErrorKind::Overflow, "exp(x*xi) exceeds 1e300 inside the output window");
    }
  }
  if (lo >= hi) throw Error(ErrorKind::Overflow, "exp(x*xi) exceeds 1e300 on the whole output window");
  out.f = SampledSignal{xp(lo), g.dx, std::vector<cx>(total.begin() + std::ptrdiff_t(lo), total.begin() + std::ptrdiff_t(hi))};
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// One-sided Laplace transforms of the piecewise-linear interpolant.
class SampledLaplace {
 public:
  explicit SampledLaplace(const SampledSignal& g) : g_(g) {
    // Samples with x ≥ 0 and x ≤ 0, with the crossing interval handled
    // separately when 0 is not a grid point.
    const double tol = 1e-9 * g.dx;
    first_pos_ = g.size();
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g.x(j) >= -tol) {
        first_pos_ = j;
        break;
      }
    }
    on_grid_ = first_pos_ < g.size() && std::abs(g.x(first_pos_)) <= tol;
    if (!on_grid_ && first_pos_ > 0 && first_pos_ < g.size()) {
      const double xa = g.x(first_pos_ - 1), xb = g.x(first_pos_);
      const double t = -xa / (xb - xa);
      zero_value_ = (1.0 - t) * g.values[first_pos_ - 1] + t * g.values[first_pos_];
    } else if (on_grid_) {
      zero_value_ = g.values[first_pos_];
    }
  }

  // ∫_0^∞ g e^{−ζx} dx
  cx plus(cx zeta) const {
    cx acc = 0.0;
    std::size_t start = first_pos_;
    if (start >= g_.size()) return 0.0;
    if (!on_grid_) acc += piece(0.0, g_.x(start), zero_value_, g_.values[start], zeta);
    acc += run(start, g_.size(), zeta);
    return acc;
  }
  // −∫_{−∞}^0 g e^{−ζx} dx
  cx minus(cx zeta) const {
    cx acc = 0.0;
    const std::size_t end = on_grid_ ? first_pos_ + 1 : first_pos_;  // exclusive
    if (end == 0) return 0.0;
    acc += run(0, end, zeta);
    if (!on_grid_ && end < g_.size()) acc += piece(g_.x(end - 1), 0.0, g_.values[end - 1], zero_value_, zeta);
    return -acc;
  }

 private:
  cx run(std::size_t a, std::size_t b, cx zeta) const {
    if (b - a < 2) return 0.0;
    cx out;
    const cx zs[1] = {zeta};
    kernels::laplace_filon_serial(g_.x(a), g_.dx, std::span<const cx>(g_.values.data() + a, b - a), zs,
                                  std::span<cx>(&out, 1));
    return out;
  }
  static cx piece(double xa, double xb, cx va, cx vb, cx zeta) {
    if (xb - xa <= 0.0) return 0.0;
    const cx vals[2] = {va, vb};
    const cx zs[1] = {zeta};
    cx out;
    kernels::laplace_filon_serial(xa, xb - xa, vals, zs, std::span<cx>(&out, 1));
    return out;
  }

  const SampledSignal& g_;
  std::size_t first_pos_ = 0;
  bool on_grid_ = false;
  cx zero_value_{0.0, 0.0};
};

}  // namespace

BoxSolveResult box_contour_solve(const Symbol& phi, const SampledSignal& g, double Y, const std::vector<double>& xs,
                                 const BoxOptions& opts) {
  g.validate(16);
  if (!(Y > 0.0)) throw Error(ErrorKind::BadRange, "box height must be positive");
  const SampledLaplace L(g);
  const std::size_t m = xs.size();
  const auto integrand = [&](cx zeta, std::span<cx> out) {
    const cx v = eval_symbol(phi, zeta);
    if (std::abs(v) < 1e-10) {
      throw Error(ErrorKind::ZeroOnContour, "phi vanishes on the box boundary");
    }
    const cx b = zeta.real() >= 0.0 ? L.plus(zeta) : L.minus(zeta);
    const cx w = b / v;
    for (std::size_t i = 0; i < m; ++i) out[i] = std::exp(xs[i] * zeta) * w;
  };
  QuadratureOptions qo;
  qo.tol = opts.tol;
  qo.max_nodes = std::size_t{1} << 14;
  const Rectangle rect = Rectangle::box(opts.xi_minus, opts.xi_plus, Y, 32);
  const auto sides = integrate_rectangle_sides(integrand, m, rect, qo);
  BoxSolveResult res;
  res.f.resize(m);
  res.horizontal.resize(m);
  res.vertical.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    res.horizontal[i] = sides.sides[0][i] + sides.sides[2][i];
    res.vertical[i] = sides.sides[1][i] + sides.sides[3][i];
    res.f[i] = res.horizontal[i] + res.vertical[i];
  }
  res.est_error = sides.est_error;
  res.nodes_used = sides.nodes_used;
  return res;
}

}  // namespace borelcalc

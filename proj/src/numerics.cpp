#include "borelcalc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "borelcalc/error.hpp"

namespace borelcalc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::BadFormat: return "BadFormat";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::ZeroOnContour: return "ZeroOnContour";
    case ErrorKind::ZeroAtOrigin: return "ZeroAtOrigin";
    case ErrorKind::AtomOnZero: return "AtomOnZero";
    case ErrorKind::NoAdmissibleRadius: return "NoAdmissibleRadius";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::StripViolation: return "StripViolation";
    case ErrorKind::TailTooShort: return "TailTooShort";
    case ErrorKind::TooFewZeros: return "TooFewZeros";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::SeriesDivisionByZero: return "SeriesDivisionByZero";
    case ErrorKind::TruncationError: return "TruncationError";
    case ErrorKind::NoDecay: return "NoDecay";
    case ErrorKind::MaxDepth: return "MaxDepth";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::CutoffTooLow: return "CutoffTooLow";
  }
  return "Unknown";
}

namespace {

constexpr std::size_t kPanelOrder = 16;

void require_finite(std::span<const cx> values) {
  for (const cx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::NonFinite, "integrand is not finite at a quadrature node");
    }
  }
}

struct Convergence {
  double tol;
  double prev_diff = -1.0;

  // Two-level test: the current difference must meet tol and the previous
  // one must already be small, which rejects chance agreement of aliased
  // low-order levels.
  bool accept(double diff, double scale) {
    const bool ok = diff < tol * scale && prev_diff >= 0.0 &&
                    prev_diff < std::max(1e-2, std::sqrt(tol)) * scale;
    prev_diff = diff;
    return ok;
  }
};

double max_diff(std::span<const cx> a, std::span<const cx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double scale_of(std::span<const cx> v) {
  double s = 1.0;
  for (const cx& x : v) s = std::max(s, std::abs(x));
  return s;
}

VectorQuadratureResult integrate_circle(const VectorIntegrand& f, std::size_t width,
                                        const Circle& c, const QuadratureOptions& opts) {
  std::size_t n = c.nodes;
  // Unnormalised running sum Σ F(ζ_j)(ζ_j - c) over all nodes evaluated so far.
  std::vector<cx> sum(width, 0.0);
  std::vector<cx> current(width, 0.0);
  std::vector<cx> previous;
  Convergence conv{opts.tol};

  auto accumulate = [&](std::size_t level_n, std::size_t first, std::size_t stride) {
    std::vector<cx> pts;
    for (std::size_t j = first; j < level_n; j += stride) {
      const double theta = 2.0 * kPi * double(j) / double(level_n);
      pts.push_back(c.center + c.radius * cx(std::cos(theta), std::sin(theta)));
    }
    std::vector<cx> vals(pts.size() * width);
    kernels::evaluate_points(opts.exec, f, width, pts, vals);
    require_finite(vals);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const cx w = pts[j] - c.center;
      for (std::size_t k = 0; k < width; ++k) sum[k] += vals[j * width + k] * w;
    }
  };

  accumulate(n, 0, 1);
  for (std::size_t k = 0; k < width; ++k) current[k] = sum[k] / double(n);
  std::size_t used = n;
  while (true) {
    if (2 * n > opts.max_nodes) {
      const double diff = previous.empty() ? 0.0 : max_diff(current, previous);
      throw Error(ErrorKind::NonConvergence,
                  "circle quadrature did not converge within " + std::to_string(opts.max_nodes) +
                      " nodes (last difference " + std::to_string(diff) + ")");
    }
    previous = current;
    accumulate(2 * n, 1, 2);
    n *= 2;
    used = n;
    for (std::size_t k = 0; k < width; ++k) current[k] = sum[k] / double(n);
    const double diff = max_diff(current, previous);
    if (conv.accept(diff, scale_of(current))) {
      return {current, diff, used};
    }
  }
}

// Side k of the rectangle as (start, end).
std::array<std::pair<cx, cx>, 4> rectangle_edges(const Rectangle& r) {
  const cx bl(r.xi_minus, r.eta_minus), br(r.xi_plus, r.eta_minus);
  const cx tr(r.xi_plus, r.eta_plus), tl(r.xi_minus, r.eta_plus);
  return {{{bl, br}, {br, tr}, {tr, tl}, {tl, bl}}};
}

std::array<std::vector<cx>, 4> rectangle_level(const VectorIntegrand& f, std::size_t width,
                                               const Rectangle& r, std::size_t panels,
                                               std::size_t order, kernels::Exec exec) {
  const GaussRule& rule = gauss_legendre(order);
  const auto edges = rectangle_edges(r);
  std::vector<cx> pts;
  std::vector<cx> wts;
  pts.reserve(4 * panels * order);
  for (const auto& [a, b] : edges) {
    const cx len = b - a;
    for (std::size_t p = 0; p < panels; ++p) {
      for (std::size_t i = 0; i < order; ++i) {
        const double s = (double(p) + rule.nodes[i]) / double(panels);
        pts.push_back(a + len * s);
        wts.push_back(len * rule.weights[i] / double(panels));
      }
    }
  }
  std::vector<cx> vals(pts.size() * width);
  kernels::evaluate_points(exec, f, width, pts, vals);
  require_finite(vals);
  std::array<std::vector<cx>, 4> sides;
  const std::size_t per_side = panels * order;
  const cx inv2pii = 1.0 / (2.0 * kPi * kI);
  for (std::size_t s = 0; s < 4; ++s) {
    sides[s].assign(width, 0.0);
    for (std::size_t j = s * per_side; j < (s + 1) * per_side; ++j) {
      for (std::size_t k = 0; k < width; ++k) sides[s][k] += vals[j * width + k] * wts[j];
    }
    for (auto& v : sides[s]) v *= inv2pii;
  }
  return sides;
}

}  // namespace

void validate(const Contour& contour) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Circle>) {
          if (!(c.radius > 0.0)) throw Error(ErrorKind::BadRange, "circle radius must be positive");
          if (c.nodes < 8 || c.nodes % 2 != 0) {
            throw Error(ErrorKind::BadRange, "circle node count must be even and >= 8");
          }
        } else {
          if (!(c.xi_minus < c.xi_plus) || !(c.eta_minus < c.eta_plus)) {
            throw Error(ErrorKind::BadRange, "rectangle sides must be non-degenerate");
          }
          if (c.nodes_per_side < 8 || c.nodes_per_side % 2 != 0) {
            throw Error(ErrorKind::BadRange, "rectangle nodes per side must be even and >= 8");
          }
        }
      },
      contour);
}

std::vector<cx> RectangleSides::total() const {
  std::vector<cx> t(sides[0].size(), 0.0);
  for (const auto& s : sides) {
    for (std::size_t k = 0; k < t.size(); ++k) t[k] += s[k];
  }
  return t;
}

RectangleSides integrate_rectangle_sides(const VectorIntegrand& f, std::size_t width,
                                         const Rectangle& rect, const QuadratureOptions& opts) {
  validate(rect);
  const std::size_t order = rect.nodes_per_side >= kPanelOrder ? kPanelOrder : 8;
  std::size_t panels = std::max<std::size_t>(1, rect.nodes_per_side / order);
  auto level = rectangle_level(f, width, rect, panels, order, opts.exec);
  RectangleSides out;
  out.sides = level;
  Convergence conv{opts.tol};
  while (true) {
    const std::size_t next_nodes = 4 * 2 * panels * order;
    if (next_nodes > opts.max_nodes) {
      throw Error(ErrorKind::NonConvergence,
                  "rectangle quadrature did not converge within " + std::to_string(opts.max_nodes) +
                      " nodes");
    }
    panels *= 2;
    RectangleSides next;
    next.sides = rectangle_level(f, width, rect, panels, order, opts.exec);
    const auto a = next.total();
    const auto b = out.total();
    const double diff = max_diff(a, b);
    out = std::move(next);
    out.est_error = diff;
    out.nodes_used = 4 * panels * order;
    if (conv.accept(diff, scale_of(a))) return out;
  }
}

VectorQuadratureResult contour_integrate(const VectorIntegrand& integrand, std::size_t width,
                                         const Contour& contour, const QuadratureOptions& opts) {
  validate(contour);
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::BadRange, "tolerance must be positive");
  if (const auto* c = std::get_if<Circle>(&contour)) {
    return integrate_circle(integrand, width, *c, opts);
  }
  const auto sides = integrate_rectangle_sides(integrand, width, std::get<Rectangle>(contour), opts);
  return {sides.total(), sides.est_error, sides.nodes_used};
}

QuadratureResult contour_integrate(const Integrand& integrand, const Contour& contour,
                                   const QuadratureOptions& opts) {
  const VectorIntegrand wrapped = [&integrand](cx z, std::span<cx> out) { out[0] = integrand(z); };
  const auto r = contour_integrate(wrapped, 1, contour, opts);
  return {r.values[0], r.est_error, r.nodes_used};
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (!(a < b)) throw Error(ErrorKind::BadRange, "uniform_grid requires a < b");
  if (n < 2) throw Error(ErrorKind::BadRange, "uniform_grid requires n >= 2");
  std::vector<double> g(n);
  const double h = (b - a) / double(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + h * double(i);
  g.back() = b;
  return g;
}

const GaussRule& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on P_n from the Chebyshev-like initial guesses, then map to [0, 1].
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

cx integrate_panels(const std::function<cx(double)>& f, double a, double b, std::size_t panels) {
  const GaussRule& rule = gauss_legendre(kPanelOrder);
  const double h = (b - a) / double(panels);
  cx acc = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = a + h * double(p);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * h * f(left + h * rule.nodes[i]);
    }
  }
  return acc;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        std::size_t panels) {
  return integrate_panels([&f](double x) { return cx(f(x), 0.0); }, a, b, panels).real();
}

}  // namespace borelcalc

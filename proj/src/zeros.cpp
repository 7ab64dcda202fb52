#include "borelcalc/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "borelcalc/error.hpp"

namespace borelcalc {

namespace {

constexpr double kZeroFloor = 1e-10;
constexpr int kMaxDepth = 40;
constexpr double kMergeRadius = 1e-6;

QuadratureOptions counting_options() {
  QuadratureOptions o;
  o.tol = 1e-8;
  return o;
}

// φ'/φ at a contour node. A node counts as lying on a zero when the Newton
// distance |φ/φ'| drops below 1e−10·max(1, |ζ|); an absolute floor on |φ|
// would misfire on symbols like e^{z²} that are merely small there.
cx log_derivative(const Symbol& phi, cx z) {
  const cx v = eval_symbol(phi, z);
  const cx d = symbol_derivative(phi, 1, z);
  if (v == 0.0 || std::abs(v) < kZeroFloor * std::max(1.0, std::abs(z)) * std::abs(d)) {
    throw Error(ErrorKind::ZeroOnContour, "phi vanishes on the contour near (" + std::to_string(z.real()) + ", " +
                                              std::to_string(z.imag()) + ")");
  }
  return d / v;
}

// (1/2πi)∮ ζ^p φ'/φ for p = 0, 1.
std::array<cx, 2> argument_moments(const Symbol& phi, const Contour& contour) {
  const auto integrand = [&](cx z, std::span<cx> out) {
    const cx q = log_derivative(phi, z);
    out[0] = q;
    out[1] = z * q;
  };
  const auto res = contour_integrate(integrand, 2, contour, counting_options());
  return {res.values[0], res.values[1]};
}

std::size_t round_count(cx value) {
  const double r = std::round(value.real());
  if (std::abs(value - cx(r, 0.0)) > 0.1 || r < 0.0) {
    throw Error(ErrorKind::NonConvergence, "argument integral " + std::to_string(value.real()) + "+" +
                                               std::to_string(value.imag()) + "i is not near an integer");
  }
  return std::size_t(r);
}

struct Box {
  double x0, x1, y0, y1;
  int depth;
  double size() const { return std::max(x1 - x0, y1 - y0); }
  cx center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(cx z, double pad) const {
    return z.real() >= x0 - pad && z.real() <= x1 + pad && z.imag() >= y0 - pad && z.imag() <= y1 + pad;
  }
  Rectangle rect() const { return Rectangle{x0, x1, y0, y1, 32}; }
};

// Newton with multiplicity m; nullopt when it fails to settle.
std::optional<cx> polish(const Symbol& phi, cx z, std::size_t m) {
  for (int it = 0; it < 60; ++it) {
    const cx v = eval_symbol(phi, z);
    if (v == 0.0) return z;
    const cx d = symbol_derivative(phi, 1, z);
    if (d == 0.0) return std::nullopt;
    const cx step = double(m) * v / d;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return z;
  }
  // Accept a slowly converging iterate only when it is already tight.
  const cx d = symbol_derivative(phi, 1, z);
  if (d != 0.0 && std::abs(double(m) * eval_symbol(phi, z) / d) < 1e-12) return z;
  return std::nullopt;
}

// Splits a box in four with a small overlap, moving the cut lines if the
// counting contours would touch a zero.
std::vector<Box> split(const Box& b, double overlap, int attempt) {
  const double t = 0.5 + 0.0371 * attempt;
  const double xm = b.x0 + t * (b.x1 - b.x0);
  const double ym = b.y0 + (1.0 - t) * (b.y1 - b.y0) + 0.0;
  const double ov = overlap * b.size();
  return {Box{b.x0, xm + ov, b.y0, ym + ov, b.depth + 1}, Box{xm - ov, b.x1, b.y0, ym + ov, b.depth + 1},
          Box{b.x0, xm + ov, ym - ov, b.y1, b.depth + 1}, Box{xm - ov, b.x1, ym - ov, b.y1, b.depth + 1}};
}

void subdivide(const Symbol& phi, const Box& box, std::size_t count, std::array<cx, 2> moments,
               std::vector<Zero>& found) {
  if (count == 0) return;
  if (box.depth > kMaxDepth) throw Error(ErrorKind::MaxDepth, "zero subdivision exceeded depth 40");
  const cx mean = moments[1] / double(count);
  // A single zero or a tight cluster: try to polish from the centroid.
  if (count == 1 || box.size() < 1e-2) {
    if (auto z = polish(phi, mean, count); z && box.contains(*z, 1e-3 * box.size())) {
      bool cluster_ok = count == 1;
      if (!cluster_ok) {
        // All zeros must sit within the merge radius: check the count on a
        // small circle about the polished point.
        try {
          const double rho = std::min(1e-3, 0.25 * box.size());
          cluster_ok = round_count(argument_moments(phi, Circle{*z, rho, 32})[0]) == count;
        } catch (const Error&) {
          cluster_ok = false;
        }
      }
      if (cluster_ok) {
        found.push_back({*z, count});
        return;
      }
    }
  }
  for (int attempt = 0; attempt < 6; ++attempt) {
    const auto children = split(box, 1e-3, attempt);
    std::vector<std::pair<std::size_t, std::array<cx, 2>>> info;
    try {
      for (const auto& c : children) {
        const auto m = argument_moments(phi, c.rect());
        info.emplace_back(round_count(m[0]), m);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ZeroOnContour || e.kind() == ErrorKind::NonConvergence) continue;
      throw;
    }
    for (std::size_t i = 0; i < children.size(); ++i) subdivide(phi, children[i], info[i].first, info[i].second, found);
    return;
  }
  throw Error(ErrorKind::NonConvergence, "could not place subdivision lines away from zeros");
}

}  // namespace

std::size_t ZeroSet::total() const {
  std::size_t t = 0;
  for (const auto& z : zeros) t += z.multiplicity;
  return t;
}

std::vector<cx> ZeroSet::expanded() const {
  std::vector<cx> out;
  for (const auto& z : zeros) out.insert(out.end(), z.multiplicity, z.zeta);
  return out;
}

cx argument_integral(const Symbol& phi, const Contour& contour, const QuadratureOptions& opts) {
  const auto integrand = [&](cx z) { return log_derivative(phi, z); };
  return contour_integrate(integrand, contour, opts).value;
}

std::size_t count_zeros(const Symbol& phi, const Contour& contour, const QuadratureOptions& opts) {
  return round_count(argument_integral(phi, contour, opts));
}

ZeroSet find_zeros(const Symbol& phi, double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::BadRange, "disk radius must be positive");
  // Pick a radius whose circle is clear of zeros.
  std::size_t expected = 0;
  double radius = R;
  bool placed = false;
  for (double delta : {0.0, 1e-3, -1e-3, 2e-3, -2e-3, 5e-3, -5e-3}) {
    try {
      radius = R * (1.0 + delta);
      expected = count_zeros(phi, Circle{0.0, radius, 64}, counting_options());
      placed = true;
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroOnContour && e.kind() != ErrorKind::NonConvergence) throw;
    }
  }
  if (!placed) throw Error(ErrorKind::ZeroOnContour, "no zero-free circle near the requested radius");

  std::vector<Zero> raw;
  if (expected > 0) {
    // Slightly enlarged square so its edges do not pass through zeros on the
    // axis-aligned extremes of the disk.
    const double h = radius * (1.0 + 1.7e-3);
    Box root{-h, h, -h, h, 0};
    std::array<cx, 2> m{};
    std::size_t c = 0;
    bool ok = false;
    for (double f : {1.0, 1.013, 1.029}) {
      try {
        root = Box{-h * f, h * f, -h * f, h * f, 0};
        m = argument_moments(phi, root.rect());
        c = round_count(m[0]);
        ok = true;
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOnContour && e.kind() != ErrorKind::NonConvergence) throw;
      }
    }
    if (!ok) throw Error(ErrorKind::ZeroOnContour, "bounding square touches a zero");
    subdivide(phi, root, c, m, raw);
  }

  // Deterministic merge: sort by modulus then argument, fold near-duplicates
  // coming from overlapping boxes.
  std::sort(raw.begin(), raw.end(), [](const Zero& a, const Zero& b) {
    const double ma = std::abs(a.zeta), mb = std::abs(b.zeta);
    if (ma != mb) return ma < mb;
    return std::arg(a.zeta) < std::arg(b.zeta);
  });
  std::vector<Zero> merged;
  for (const auto& z : raw) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Zero& w) { return std::abs(w.zeta - z.zeta) < kMergeRadius; });
    if (it == merged.end()) {
      merged.push_back(z);
    } else {
      it->multiplicity = std::max(it->multiplicity, z.multiplicity);
    }
  }
  ZeroSet out;
  out.disk_radius = radius;
  for (const auto& z : merged) {
    if (std::abs(z.zeta) <= radius) out.zeros.push_back(z);
  }
  std::sort(out.zeros.begin(), out.zeros.end(), [](const Zero& a, const Zero& b) {
    const double ma = std::abs(a.zeta), mb = std::abs(b.zeta);
    if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma)) return ma < mb;
    return std::arg(a.zeta) < std::arg(b.zeta);
  });
  if (out.total() != expected) {
    throw Error(ErrorKind::NonConvergence, "zero finder located " + std::to_string(out.total()) +
                                               " zeros but the boundary count is " + std::to_string(expected));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counting functions and density diagnostics

namespace {

struct SortedModuli {
  std::vector<double> mod;
  std::vector<double> log_prefix;  // Σ_{i<k} log mod[i]

  explicit SortedModuli(const std::vector<cx>& Z) {
    mod.reserve(Z.size());
    for (const auto& z : Z) {
      const double m = std::abs(z);
      if (m == 0.0) throw Error(ErrorKind::ZeroAtOrigin, "the zero set contains the origin");
      mod.push_back(m);
    }
    std::sort(mod.begin(), mod.end());
    log_prefix.assign(mod.size() + 1, 0.0);
    for (std::size_t i = 0; i < mod.size(); ++i) log_prefix[i + 1] = log_prefix[i] + std::log(mod[i]);
  }
  std::size_t n(double r) const { return std::size_t(std::lower_bound(mod.begin(), mod.end(), r) - mod.begin()); }
  double N(double r) const {
    const std::size_t k = n(r);
    return double(k) * std::log(r) - log_prefix[k];
  }
};

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

}  // namespace

std::vector<double> log_grid(double a, double b, std::size_t n) {
  if (!(a > 0.0) || !(a < b) || n < 2) throw Error(ErrorKind::BadRange, "log grid needs 0 < a < b and n >= 2");
  std::vector<double> g(n);
  const double la = std::log(a), lb = std::log(b);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * double(i) / double(n - 1));
  g.front() = a;
  g.back() = b;
  return g;
}

CountingFunctions counting_functions(const std::vector<cx>& Z, const std::vector<double>& r_grid) {
  const SortedModuli sm(Z);
  CountingFunctions out;
  out.r = r_grid;
  for (double r : r_grid) {
    if (!(r > 0.0)) throw Error(ErrorKind::BadRange, "radii must be positive");
    out.n.push_back(sm.n(r));
    out.N.push_back(sm.N(r));
  }
  return out;
}

CountingFunctions counting_functions(const ZeroSet& Z, const std::vector<double>& r_grid) {
  return counting_functions(Z.expanded(), r_grid);
}

double exponent_of_convergence(const std::vector<cx>& Z, double R_max) {
  if (Z.size() < 50) throw Error(ErrorKind::TooFewZeros, "need at least 50 zeros, got " + std::to_string(Z.size()));
  const SortedModuli sm(Z);
  const auto grid = log_grid(R_max / 10.0, R_max, 200);
  std::vector<double> lx, ly;
  for (double r : grid) {
    const std::size_t n = sm.n(r);
    if (n == 0) continue;
    lx.push_back(std::log(r));
    ly.push_back(std::log(double(n)));
  }
  if (lx.size() < 2) throw Error(ErrorKind::TooFewZeros, "too few zeros in the top decade");
  return ls_slope(lx, ly);
}

std::string_view to_string(LevinsonVerdict v) {
  switch (v) {
    case LevinsonVerdict::DenseIndicated: return "dense-indicated";
    case LevinsonVerdict::Bounded: return "bounded";
    case LevinsonVerdict::Decreasing: return "decreasing";
  }
  return "?";
}

std::string_view to_string(GrowthVerdict v) {
  return v == GrowthVerdict::UnboundedIndicated ? "unbounded-indicated" : "bounded";
}

LevinsonResult levinson_check(const std::vector<cx>& Z, double interval_length, double r_max) {
  const SortedModuli sm(Z);
  if (!(r_max > 1.0)) throw Error(ErrorKind::BadRange, "r_max must exceed 1");
  const auto value = [&](double r) { return sm.N(r) - interval_length * r / kPi + 0.5 * std::log(r); };
  LevinsonResult out;
  out.margin = -1e300;
  for (double r : log_grid(1.0, r_max, 400)) out.margin = std::max(out.margin, value(r));
  out.trend = value(r_max) - value(r_max / 10.0);
  const double scale = std::log(r_max);
  if (out.trend > scale) {
    out.verdict = LevinsonVerdict::DenseIndicated;
  } else if (out.trend < -scale) {
    out.verdict = LevinsonVerdict::Decreasing;
  } else {
    out.verdict = LevinsonVerdict::Bounded;
  }
  return out;
}

TgbResult tgb_diagnostic(const std::vector<cx>& Z, const std::vector<double>& r_grid) {
  if (r_grid.size() < 2) throw Error(ErrorKind::BadRange, "grid needs at least two radii");
  const SortedModuli sm(Z);
  const double r_top = *std::max_element(r_grid.begin(), r_grid.end());
  std::vector<double> lx, y;
  for (double r : r_grid) {
    if (r < r_top / 10.0) continue;
    lx.push_back(std::log(r));
    y.push_back(sm.N(r) / r);
  }
  TgbResult out;
  out.slope = lx.size() >= 2 ? ls_slope(lx, y) : 0.0;
  out.verdict = out.slope > 0.0 ? GrowthVerdict::UnboundedIndicated : GrowthVerdict::Bounded;
  return out;
}

DensityReport density_report(const std::vector<cx>& Z, const std::vector<double>& r_grid, double interval_length) {
  DensityReport rep;
  rep.counts = counting_functions(Z, r_grid);
  rep.linear_slope = 1e300;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    rep.linear_slope = std::min(rep.linear_slope, rep.counts.N[i] / r_grid[i]);
  }
  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  rep.exponent_estimate = Z.size() >= 50 ? exponent_of_convergence(Z, r_max) : 0.0;
  rep.levinson = levinson_check(Z, interval_length, r_max);
  rep.growth = tgb_diagnostic(Z, r_grid);
  return rep;
}

std::vector<cx> lattice_union_family(std::size_t m_max, double radius) {
  std::vector<cx> Z;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const double rm = double(m) + 0.5 + std::sqrt(2.0) / std::pow(10.0, double(m));
    for (long n = 1; double(n) * rm <= radius; ++n) {
      Z.emplace_back(double(n) * rm, 0.0);
      Z.emplace_back(-double(n) * rm, 0.0);
    }
  }
  return Z;
}

}  // namespace borelcalc

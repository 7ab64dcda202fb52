#include "borelcalc/demos.hpp"

#include <cmath>

#include "borelcalc/calculus.hpp"
#include "borelcalc/spectral.hpp"
#include "borelcalc/symbols.hpp"

namespace borelcalc::demos {

SampledSignal bump_surrogate(double cutoff, std::size_t n) {
  SampledSignal s{-8.0, 16.0 / double(n), std::vector<cx>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = s.x(i);
    if (std::abs(x) < 1.0) s.values[i] = std::exp(-1.0 / (1.0 - x * x));
  }
  auto bins = spectral::forward(s.values);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(spectral::angular_frequency(k, n, s.dx)) > cutoff) bins[k] = 0.0;
  }
  s.values = spectral::inverse(bins);
  return s;
}

std::vector<DivergenceRow> divergence(const std::vector<std::size_t>& orders, double cutoff) {
  const Symbol phi = Symbol::parse("exp(z^2)");
  const SampledSignal f = bump_surrogate(cutoff);
  std::vector<DivergenceRow> rows;
  for (std::size_t K : orders) rows.push_back({K, partial_sum_apply(phi, K, f, cutoff, -2.0, 2.0).l1_norm});
  return rows;
}

std::vector<HeatRow> heat(const std::vector<double>& times, std::size_t points) {
  const ExpPoly cosine = 0.5 * ExpPoly::exponential(kI) + 0.5 * ExpPoly::exponential(-kI);
  std::vector<HeatRow> rows;
  for (double t : times) {
    const ExpPoly u = apply_symbol(Symbol::from_expr(expr::func(Op::Exp, expr::mul(expr::num(t), expr::pow(expr::var(), 2)))),
                                   cosine);
    for (double x : uniform_grid(-kPi, kPi, points)) rows.push_back({t, x, u(x), std::exp(-t) * std::cos(x)});
  }
  return rows;
}

double density_constant(std::size_t m_max) {
  double h = 0.0;
  for (std::size_t m = 1; m <= m_max; ++m) h += 1.0 / double(m);
  return (2.0 - 2.0 / std::exp(1.0)) * h;
}

DensityDemo density(std::size_t m_max, double radius, double interval_length, std::size_t grid_points) {
  DensityDemo d;
  d.zeros = lattice_union_family(m_max, radius);
  d.r_grid = log_grid(100.0, radius, grid_points);
  d.report = density_report(d.zeros, d.r_grid, interval_length);
  d.constant = density_constant(m_max);
  return d;
}

}  // namespace borelcalc::demos

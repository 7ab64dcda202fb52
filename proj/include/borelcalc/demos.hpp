#pragma once

#include <vector>

#include "borelcalc/expfun.hpp"
#include "borelcalc/zeros.hpp"

namespace borelcalc::demos {

/// e^{−1/(1−x²)} on 4096 points of [−8, 8) with every frequency above
/// `cutoff` removed.
SampledSignal bump_surrogate(double cutoff = 40.0, std::size_t n = 4096);

struct DivergenceRow {
  std::size_t K = 0;
  double l1_norm = 0.0;
};

/// L¹([−2, 2]) norms of the partial sums of e^{(d/dx)²} on the surrogate.
std::vector<DivergenceRow> divergence(const std::vector<std::size_t>& orders = {5, 10, 15, 20},
                                      double cutoff = 40.0);

struct HeatRow {
  double t = 0.0;
  double x = 0.0;
  cx computed{0.0, 0.0};
  double exact = 0.0;
};

/// e^{t(d/dx)²} cos x against e^{−t} cos x.
std::vector<HeatRow> heat(const std::vector<double>& times = {0.0, 0.5, 1.0, 2.0}, std::size_t points = 21);

/// (2 − 2/e)·Σ_{m ≤ m_max} 1/m, the lower slope for N_Z(r)/r on the
/// lattice-union family.
double density_constant(std::size_t m_max = 6);

struct DensityDemo {
  std::vector<cx> zeros;
  std::vector<double> r_grid;
  DensityReport report;
  double constant = 0.0;
};

DensityDemo density(std::size_t m_max = 6, double radius = 1e4, double interval_length = 10.0,
                    std::size_t grid_points = 41);

}  // namespace borelcalc::demos

// Serial against OpenMP timings for each kernel, plus one end-to-end
// workload (zero finding) under both execution modes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <omp.h>

#include "borelcalc/kernels.hpp"
#include "borelcalc/symbols.hpp"
#include "borelcalc/zeros.hpp"

using namespace borelcalc;
using kernels::cx;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = INFINITY;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %9.3f ms   omp %9.3f ms   speedup %5.2fx\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  const std::size_t n = 1 << 16;
  std::vector<cx> pts(n), out(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = std::polar(3.0, 2.0 * M_PI * double(i) / double(n));
  const Symbol phi = Symbol::parse("2*z*cosh(z) + exp(z^2)/(z+7)");
  const kernels::PointFn fn = [&](cx z) { return phi(z); };

  report("evaluate_points", best_of(5, [&] { kernels::evaluate_points_serial(fn, pts, out); }),
         best_of(5, [&] { kernels::evaluate_points_omp(fn, pts, out); }));
  report("abs_min", best_of(5, [&] { kernels::abs_min_serial(fn, pts); }),
         best_of(5, [&] { kernels::abs_min_omp(fn, pts); }));

  std::vector<cx> samples(1 << 14);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = std::exp(-std::pow(double(i) / 2000.0 - 4.0, 2));
  std::vector<cx> zetas(512), lap(512);
  for (std::size_t k = 0; k < zetas.size(); ++k) zetas[k] = cx(0.5, double(k) * 0.1 - 25.0);
  report("laplace_filon", best_of(3, [&] { kernels::laplace_filon_serial(-4.0, 1.0 / 2000.0, samples, zetas, lap); }),
         best_of(3, [&] { kernels::laplace_filon_omp(-4.0, 1.0 / 2000.0, samples, zetas, lap); }));

  std::vector<cx> bins(1 << 20, cx(1.0, 2.0)), mult(1 << 20, cx(0.5, -1.0));
  report("scale_bins", best_of(10, [&] { kernels::scale_bins_serial(bins, mult, true); }),
         best_of(10, [&] { kernels::scale_bins_omp(bins, mult, true); }));

  const Symbol e = Symbol::parse("exp(z)-1");
  kernels::set_default_exec(kernels::Exec::Serial);
  const double zs = best_of(3, [&] { find_zeros(e, 60.0); });
  kernels::set_default_exec(kernels::Exec::Parallel);
  const double zp = best_of(3, [&] { find_zeros(e, 60.0); });
  report("find_zeros (R = 60)", zs, zp);
  return 0;
}

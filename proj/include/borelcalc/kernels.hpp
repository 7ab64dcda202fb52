#pragma once

// Data-parallel inner loops. Every kernel has a serial reference version and
// an OpenMP version; the two must produce bit-identical output, which the
// kernel tests assert. Reductions are always finished serially in index
// order so results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace borelcalc::kernels {

using cx = std::complex<double>;

enum class Exec { Serial, Parallel };

/// Process-wide default used by the numerical modules.
Exec default_exec();
void set_default_exec(Exec exec);

/// Caps the OpenMP team size; values < 1 are ignored.
void set_thread_cap(int threads);
int thread_cap();

using PointFn = std::function<cx(cx)>;

/// out[i] = fn(points[i]).
void evaluate_points_serial(const PointFn& fn, std::span<const cx> points, std::span<cx> out);
void evaluate_points_omp(const PointFn& fn, std::span<const cx> points, std::span<cx> out);
void evaluate_points(Exec exec, const PointFn& fn, std::span<const cx> points, std::span<cx> out);

/// Vector-valued evaluation: fn writes `width` values for each point into
/// out[i * width, (i + 1) * width).
using VectorPointFn = std::function<void(cx, std::span<cx>)>;
void evaluate_points_serial(const VectorPointFn& fn, std::size_t width, std::span<const cx> points,
                            std::span<cx> out);
void evaluate_points_omp(const VectorPointFn& fn, std::size_t width, std::span<const cx> points,
                         std::span<cx> out);
void evaluate_points(Exec exec, const VectorPointFn& fn, std::size_t width,
                     std::span<const cx> points, std::span<cx> out);

struct GridMin {
  double value = 0.0;
  std::size_t index = 0;
};

/// Minimum of |fn| over the points; ties resolve to the lowest index.
GridMin abs_min_serial(const PointFn& fn, std::span<const cx> points);
GridMin abs_min_omp(const PointFn& fn, std::span<const cx> points);
GridMin abs_min(Exec exec, const PointFn& fn, std::span<const cx> points);

/// Exact integral of the piecewise-linear interpolant of uniformly spaced
/// samples against e^{-zeta x}, for every zeta in `zetas`:
///   out[k] = ∫_{x_0}^{x_{n-1}} g_lin(x) e^{-zeta_k x} dx,  x_j = x0 + j*dx.
void laplace_filon_serial(double x0, double dx, std::span<const cx> samples,
                          std::span<const cx> zetas, std::span<cx> out);
void laplace_filon_omp(double x0, double dx, std::span<const cx> samples,
                       std::span<const cx> zetas, std::span<cx> out);
void laplace_filon(Exec exec, double x0, double dx, std::span<const cx> samples,
                   std::span<const cx> zetas, std::span<cx> out);

/// bins[k] = bins[k] * multiplier[k] (or / when divide is set).
void scale_bins_serial(std::span<cx> bins, std::span<const cx> multiplier, bool divide);
void scale_bins_omp(std::span<cx> bins, std::span<const cx> multiplier, bool divide);
void scale_bins(Exec exec, std::span<cx> bins, std::span<const cx> multiplier, bool divide);

}  // namespace borelcalc::kernels

#include "borelcalc/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <exception>
#include <mutex>
#include <stdexcept>

namespace borelcalc::kernels {

namespace {

std::atomic<Exec> g_exec{Exec::Parallel};
std::atomic<int> g_threads{0};

int team_size() {
  const int cap = g_threads.load();
  return cap > 0 ? cap : omp_get_max_threads();
}

// ∫_0^1 e^{-w u} du and ∫_0^1 u e^{-w u} du.
void filon_moments(cx w, cx& e1, cx& e2) {
  if (std::abs(w) < 0.5) {
    cx term = 1.0;  // (-w)^k / k!
    e1 = 0.0;
    e2 = 0.0;
    for (int k = 0; k < 24; ++k) {
      e1 += term / double(k + 1);
      e2 += term / double(k + 2);
      term *= -w / double(k + 1);
    }
    return;
  }
  const cx ew = std::exp(-w);
  e1 = (1.0 - ew) / w;
  e2 = (1.0 - ew * (1.0 + w)) / (w * w);
}

cx filon_one(double x0, double dx, std::span<const cx> g, cx zeta) {
  const std::size_t n = g.size();
  if (n < 2) return 0.0;
  cx e1, e2;
  filon_moments(zeta * dx, e1, e2);
  const cx left = dx * (e1 - e2);
  const cx right = dx * e2;
  const cx step = std::exp(-zeta * dx);
  cx phase = std::exp(-zeta * x0);
  cx acc = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    acc += phase * (g[j] * left + g[j + 1] * right);
    // Re-anchor periodically so the running product does not drift.
    if ((j + 1) % 256 == 0) {
      phase = std::exp(-zeta * (x0 + double(j + 1) * dx));
    } else {
      phase *= step;
    }
  }
  return acc;
}

// Exceptions must not escape an OpenMP region; keep the first and rethrow.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr first_;
};

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel: output size mismatch");
}

}  // namespace

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec exec) { g_exec.store(exec); }

void set_thread_cap(int threads) {
  if (threads >= 1) g_threads.store(threads);
}
int thread_cap() { return team_size(); }

void evaluate_points_serial(const PointFn& fn, std::span<const cx> points, std::span<cx> out) {
  check_sizes(points.size(), out.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = fn(points[i]);
}

void evaluate_points_omp(const PointFn& fn, std::span<const cx> points, std::span<cx> out) {
  check_sizes(points.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  ExceptionSlot slot;
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t i = 0; i < n; ++i) slot.run([&] { out[i] = fn(points[i]); });
  slot.rethrow();
}

void evaluate_points(Exec exec, const PointFn& fn, std::span<const cx> points, std::span<cx> out) {
  if (exec == Exec::Parallel) {
    evaluate_points_omp(fn, points, out);
  } else {
    evaluate_points_serial(fn, points, out);
  }
}

void evaluate_points_serial(const VectorPointFn& fn, std::size_t width, std::span<const cx> points,
                            std::span<cx> out) {
  check_sizes(points.size() * width, out.size());
  for (std::size_t i = 0; i < points.size(); ++i) fn(points[i], out.subspan(i * width, width));
}

void evaluate_points_omp(const VectorPointFn& fn, std::size_t width, std::span<const cx> points,
                         std::span<cx> out) {
  check_sizes(points.size() * width, out.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  ExceptionSlot slot;
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    slot.run([&] { fn(points[i], out.subspan(std::size_t(i) * width, width)); });
  }
  slot.rethrow();
}

void evaluate_points(Exec exec, const VectorPointFn& fn, std::size_t width,
                     std::span<const cx> points, std::span<cx> out) {
  if (exec == Exec::Parallel) {
    evaluate_points_omp(fn, width, points, out);
  } else {
    evaluate_points_serial(fn, width, points, out);
  }
}

GridMin abs_min_serial(const PointFn& fn, std::span<const cx> points) {
  GridMin best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = std::abs(fn(points[i]));
    if (v < best.value || std::isnan(v)) {
      best = {v, i};
      if (std::isnan(v)) break;
    }
  }
  return best;
}

GridMin abs_min_omp(const PointFn& fn, std::span<const cx> points) {
  std::vector<double> values(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  ExceptionSlot slot;
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t i = 0; i < n; ++i) slot.run([&] { values[i] = std::abs(fn(points[i])); });
  slot.rethrow();
  GridMin best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < best.value || std::isnan(values[i])) {
      best = {values[i], i};
      if (std::isnan(values[i])) break;
    }
  }
  return best;
}

GridMin abs_min(Exec exec, const PointFn& fn, std::span<const cx> points) {
  return exec == Exec::Parallel ? abs_min_omp(fn, points) : abs_min_serial(fn, points);
}

void laplace_filon_serial(double x0, double dx, std::span<const cx> samples,
                          std::span<const cx> zetas, std::span<cx> out) {
  check_sizes(zetas.size(), out.size());
  for (std::size_t k = 0; k < zetas.size(); ++k) out[k] = filon_one(x0, dx, samples, zetas[k]);
}

void laplace_filon_omp(double x0, double dx, std::span<const cx> samples,
                       std::span<const cx> zetas, std::span<cx> out) {
  check_sizes(zetas.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(zetas.size());
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = filon_one(x0, dx, samples, zetas[k]);
}

void laplace_filon(Exec exec, double x0, double dx, std::span<const cx> samples,
                   std::span<const cx> zetas, std::span<cx> out) {
  if (exec == Exec::Parallel) {
    laplace_filon_omp(x0, dx, samples, zetas, out);
  } else {
    laplace_filon_serial(x0, dx, samples, zetas, out);
  }
}

void scale_bins_serial(std::span<cx> bins, std::span<const cx> multiplier, bool divide) {
  check_sizes(bins.size(), multiplier.size());
  for (std::size_t k = 0; k < bins.size(); ++k) {
    bins[k] = divide ? bins[k] / multiplier[k] : bins[k] * multiplier[k];
  }
}

void scale_bins_omp(std::span<cx> bins, std::span<const cx> multiplier, bool divide) {
  check_sizes(bins.size(), multiplier.size());
  const auto n = static_cast<std::ptrdiff_t>(bins.size());
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    bins[k] = divide ? bins[k] / multiplier[k] : bins[k] * multiplier[k];
  }
}

void scale_bins(Exec exec, std::span<cx> bins, std::span<const cx> multiplier, bool divide) {
  if (exec == Exec::Parallel) {
    scale_bins_omp(bins, multiplier, divide);
  } else {
    scale_bins_serial(bins, multiplier, divide);
  }
}

}  // namespace borelcalc::kernels

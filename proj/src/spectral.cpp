#include "borelcalc/spectral.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>

namespace borelcalc::spectral {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex g_plan_mutex;

std::vector<cx> transform(const std::vector<cx>& in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cx> out(in.size());
  if (n == 0) return out;
  std::vector<cx> work(in);
  auto* src = reinterpret_cast<fftw_complex*>(work.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(g_plan_mutex);
    plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(g_plan_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<cx> forward(const std::vector<cx>& x) { return transform(x, FFTW_FORWARD); }

std::vector<cx> inverse(const std::vector<cx>& X) {
  auto out = transform(X, FFTW_BACKWARD);
  const double scale = 1.0 / double(X.size());
  for (auto& v : out) v *= scale;
  return out;
}

double angular_frequency(std::size_t k, std::size_t n, double dx) {
  const double span = double(n) * dx;
  const double kk = k <= n / 2 ? double(k) : double(k) - double(n);
  return 2.0 * std::numbers::pi * kk / span;
}

}  // namespace borelcalc::spectral

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "borelcalc/expfun.hpp"
#include "borelcalc/numerics.hpp"

namespace testing {

using borelcalc::cx;

inline borelcalc::ExpPoly cosine() {
  using borelcalc::ExpPoly;
  return 0.5 * ExpPoly::exponential(borelcalc::kI) + 0.5 * ExpPoly::exponential(-borelcalc::kI);
}

inline borelcalc::ExpPoly sine() {
  using borelcalc::ExpPoly;
  const cx h = cx(0.0, -0.5);
  return h * ExpPoly::exponential(borelcalc::kI) - h * ExpPoly::exponential(-borelcalc::kI);
}

/// Samples f on [a, b) with spacing dx.
inline borelcalc::SampledSignal sample(const std::function<cx(double)>& f, double a, double b, double dx) {
  borelcalc::SampledSignal s{a, dx, {}};
  const auto n = std::size_t(std::llround((b - a) / dx));
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(f(s.x(i)));
  return s;
}

inline double sup_error(const std::function<cx(double)>& f, const std::function<cx(double)>& g,
                        const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(f(x) - g(x)));
  return worst;
}

}  // namespace testing

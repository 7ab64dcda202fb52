#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "borelcalc/calculus.hpp"
#include "borelcalc/error.hpp"
#include "borelcalc/fftsolve.hpp"
#include "support.hpp"

using namespace borelcalc;

TEST_CASE("decay abscissas of a two-sided exponential") {
  const auto g = testing::sample([](double x) { return cx(std::exp(-std::abs(x))); }, -20.0, 20.0, 0.01);
  const auto d = estimate_decay_abscissas(g);
  CHECK(std::abs(d.X_plus + 1.0) < 0.05);
  CHECK(std::abs(d.X_minus - 1.0) < 0.05);
}

TEST_CASE("decay abscissas of a band-limited pulse") {
  const auto g = testing::sample([](double x) { return cx(x == 0.0 ? 1.0 : std::sin(x) / x); }, -200.0, 200.0, 0.05);
  const auto d = estimate_decay_abscissas(g);
  CHECK(std::abs(d.X_plus) < 0.05);
  CHECK(std::abs(d.X_minus) < 0.05);
}

TEST_CASE("decay abscissas of a slowly tapered exponential") {
  const auto g = testing::sample([](double x) { return cx(std::exp(2.0 * x - x * x / 100.0)); }, -15.0, 5.0, 0.01);
  CHECK(std::abs(estimate_decay_abscissas(g).X_plus - 2.0) < 0.1);
}

TEST_CASE("decay abscissas need long tails") {
  const auto g = testing::sample([](double x) { return cx(std::exp(-x * x)); }, -1.0, 1.0, 0.05);
  CHECK_THROWS_AS(estimate_decay_abscissas(g), Error);
}

TEST_CASE("strip minimum") {
  CHECK(strip_min_check(Symbol::parse("z^2+1"), -0.5, 0.5, 2.0, 200.0).epsilon >= 3.0 - 1e-9);
  CHECK(strip_min_check(Symbol::parse("2*z*cosh(z)"), 0.1, 0.5, 1.0, 200.0).epsilon > 2.0 * 0.1 * std::sinh(0.1));
  try {
    strip_min_check(Symbol::parse("2*z*cosh(z)"), -0.5, 0.5, 1.0, 200.0);
    FAIL("expected StripViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StripViolation);
  }
  CHECK(default_y_max(0.5) == 200.0);
  CHECK(default_y_max(1.0 / 128.0) == doctest::Approx(8.0 * kPi * 128.0));
}

TEST_CASE("strip configuration rejects strips outside the abscissas") {
  const auto g = testing::sample([](double x) { return cx(std::exp(-std::abs(x))); }, -20.0, 20.0, 0.01);
  try {
    configure_strip(Symbol::parse("z^2+1"), g, 1.5, 2.0, 2.0);
    FAIL("expected BadRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadRange);
  }
}

TEST_CASE("fft solve with the identity symbol") {
  const auto g = testing::sample([](double x) { return cx(std::exp(-x * x) * std::cos(3.0 * x)); }, -12.0, 12.0, 1.0 / 64.0);
  const Symbol one = Symbol::constant(1.0);
  const auto res = fft_solve(one, g, configure_strip(one, g, -0.3, 0.3, 2.0));
  double worst = 0.0;
  for (std::size_t i = 0; i < res.f.size(); ++i) {
    const double x = res.f.x(i);
    if (std::abs(x) > 6.0) continue;
    worst = std::max(worst, std::abs(res.f.values[i] - std::exp(-x * x) * std::cos(3.0 * x)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("fft solve: second-order ODE with Gaussian data") {
  const Symbol phi = Symbol::parse("z^2+1");
  const auto g = testing::sample([](double x) { return cx((4.0 * x * x - 1.0) * std::exp(-x * x)); }, -12.0, 12.0, 1.0 / 128.0);
  const auto res = fft_solve(phi, g, configure_strip(phi, g, -0.3, 0.3, 2.0));
  std::vector<double> xs;
  std::vector<cx> d;
  for (std::size_t i = 0; i < res.f.size(); ++i) {
    const double x = res.f.x(i);
    if (std::abs(x) <= 6.0) {
      xs.push_back(x);
      d.push_back(res.f.values[i] - std::exp(-x * x));
    }
  }
  Eigen::MatrixXcd A(xs.size(), 2);
  Eigen::VectorXcd b(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    A(i, 0) = std::exp(kI * xs[i]);
    A(i, 1) = std::exp(-kI * xs[i]);
    b(i) = d[i];
  }
  const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(b);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += std::norm(b(i) - A(i, 0) * c(0) - A(i, 1) * c(1));
    den += std::exp(-2.0 * xs[i] * xs[i]);
  }
  CHECK(std::sqrt(num / den) < 1e-3);
}

TEST_CASE("fft solve: two-shift derivative symbol") {
  const Symbol phi = Symbol::parse("2*z*cosh(z)");
  const auto f0p = [](double x) {
    // derivative of e^{-x} sin 3x e^{-x²/4}
    const double e = std::exp(-x - x * x / 4.0);
    return e * (3.0 * std::cos(3.0 * x) - (1.0 + x / 2.0) * std::sin(3.0 * x));
  };
  const auto g = testing::sample([&](double x) { return cx(f0p(x + 1.0) + f0p(x - 1.0)); }, -16.0, 16.0, 1.0 / 64.0);
  const auto res = fft_solve(phi, g, configure_strip(phi, g, 0.2, 0.6, 2.0));
  const TranslationDifferentialForm T{{{1.0, {0.0, 1.0}}, {-1.0, {0.0, 1.0}}}};
  const auto img = translate_apply(T, res.f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double x = img.x(i);
    if (std::abs(x) > 8.0) continue;  // interior half of the data window
    const auto j = std::size_t(std::llround((x - g.x0) / g.dx));
    num += std::norm(img.values[i] - g.values[j]);
    den += std::norm(g.values[j]);
  }
  CHECK(std::sqrt(num / den) < 5e-3);
}

TEST_CASE("box contour solve") {
  const auto g = testing::sample([](double x) { return cx(std::cos(x)); }, -40.0, 40.0, 1.0 / 128.0);
  const auto xs = uniform_grid(-3.0, 3.0, 13);
  // The box [−1, 1] × [−Y, Y] also encloses the zeros ±2i of z² + 4, which add −cos 2x / 3.
  const auto r = box_contour_solve(Symbol::parse("z^2+4"), g, 40.0, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(r.f[i] - (std::cos(xs[i]) - std::cos(2.0 * xs[i])) / 3.0) < 1e-4);
  }
  // Symbols without zeros see only the window truncation of g, which decays like 1/(Y (L − |x|)).
  const auto wide = testing::sample([](double x) { return cx(std::cos(x)); }, -80.0, 80.0, 1.0 / 128.0);
  const auto s = box_contour_solve(Symbol::parse("exp(z)"), wide, 80.0, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(s.f[i] - std::cos(xs[i] - 1.0)) < 1e-4);
  const auto id = box_contour_solve(Symbol::constant(1.0), wide, 80.0, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(id.f[i] - std::cos(xs[i])) < 1e-4);
}

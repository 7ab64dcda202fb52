#include <doctest.h>

#include <cmath>

#include "borelcalc/borel.hpp"
#include "borelcalc/error.hpp"
#include "support.hpp"

using namespace borelcalc;

TEST_CASE("borel_series: exponential, cosine, constant") {
  const auto e = TaylorRep::from_exppoly(ExpPoly::exponential(1.0));
  CHECK(std::abs(borel_series(e, 2.0).value - 1.0) < 1e-12);
  const auto c = TaylorRep::from_exppoly(testing::cosine());
  CHECK(std::abs(borel_series(c, cx(0.0, 2.0)).value - cx(0.0, -2.0 / 3.0)) < 1e-12);
  const TaylorRep one{{1.0}, 0.0};
  for (cx z : {cx(0.5, 0.0), cx(-3.0, 1.0), cx(0.0, 0.01)}) CHECK(std::abs(borel_series(one, z).value - 1.0 / z) < 1e-12);
}

TEST_CASE("borel_series: domain and convergence errors") {
  const auto e = TaylorRep::from_exppoly(ExpPoly::exponential(1.0));
  try {
    borel_series(e, 0.9);
    FAIL("expected OutsideDomain");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::OutsideDomain);
  }
  try {
    borel_series(e, 1.01, 16);
    FAIL("expected NonConvergence");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonConvergence);
  }
}

TEST_CASE("borel_exppoly closed forms") {
  const auto be = borel_exppoly(ExpPoly::exponential(1.0));
  const auto bc = borel_exppoly(testing::cosine());
  for (cx z : {cx(2.0, 0.0), cx(0.5, 3.0), cx(-4.0, -1.0)}) {
    CHECK(std::abs(be(z) - 1.0 / (z - 1.0)) < 1e-14);
    CHECK(std::abs(bc(z) - z / (z * z + 1.0)) < 1e-14);
  }
  const ExpPoly xe({ExpAtom{2.0, {0.0, 1.0}}});
  const auto bx = borel_exppoly(xe);
  CHECK(std::abs(bx(5.0) - 1.0 / 9.0) < 1e-15);
  CHECK(std::abs(bx(5.0) - borel_series(TaylorRep::from_exppoly(xe), 5.0).value) < 1e-9);
  REQUIRE(bx.closed_form.has_value());
  CHECK(bx.valid_radius == 2.0);
}

TEST_CASE("singular hull") {
  const auto h = borel_exppoly(ExpPoly::exponential(2.0) + ExpPoly::exponential(cx(0.0, 4.0))).singular_hull();
  CHECK(std::abs(h.center - cx(1.0, 2.0)) < 1e-15);
  CHECK(std::abs(h.radius - std::sqrt(5.0)) < 1e-15);
  const auto t = borel_taylor(TaylorRep::from_exppoly(testing::cosine())).singular_hull();
  CHECK(t.center == cx(0.0));
  CHECK(t.radius == 1.0);
}

TEST_CASE("borel_laplace") {
  CHECK(std::abs(borel_laplace([](cx x) { return std::cos(x); }, 0.0, 2.0) - 0.4) < 1e-12);
  CHECK(std::abs(borel_laplace([](cx x) { return std::exp(x); }, 0.0, 3.0) - 0.5) < 1e-12);
  CHECK(std::abs(borel_laplace([](cx) { return cx(1.0); }, 0.0, 1.0) - 1.0) < 1e-12);
  // Rotated ray reaches ζ = −2 where the real ray diverges.
  CHECK(std::abs(borel_laplace([](cx x) { return std::exp(x); }, kPi, -2.0) - (-1.0 / 3.0)) < 1e-12);
  CHECK_THROWS_AS(borel_laplace([](cx x) { return std::exp(x); }, 0.0, 0.5), Error);
}

TEST_CASE("inverse_borel") {
  const auto be = borel_exppoly(ExpPoly::exponential(1.0));
  CHECK(std::abs(inverse_borel(be, 2.0, 1.0).value - std::exp(1.0)) < 1e-10);
  const auto bc = borel_exppoly(testing::cosine());
  CHECK(std::abs(inverse_borel(bc, 2.0, kPi).value + 1.0) < 1e-10);
  const BorelRep inv{[](cx z) { return 1.0 / z; }, 0.0, std::nullopt};
  for (cx x : {cx(0.0), cx(3.0, -2.0)}) CHECK(std::abs(inverse_borel(inv, 1.0, x).value - 1.0) < 1e-12);
  const std::vector<cx> xs{-1.0, 0.0, 2.0};
  const auto v = inverse_borel(be, Circle{0.0, 2.0}, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(v.values[i] - std::exp(xs[i])) < 1e-10);
}

TEST_CASE("spectral_measure_from_borel") {
  const auto mu = spectral_measure_from_borel(borel_exppoly(ExpPoly::exponential(1.0)), 2.0);
  for (double th : {0.0, 1.0, -2.5}) {
    const cx z = std::polar(2.0, th);
    CHECK(std::abs(mu.density(th) - z / (z - 1.0) / (2.0 * kPi)) < 1e-15);
  }
  const auto mc = spectral_measure_from_borel(borel_exppoly(testing::cosine()), 2.0);
  CHECK(std::abs(p_transform(mc, 0.5) - std::cos(0.5)) < 1e-8);
  const BorelRep inv{[](cx z) { return 1.0 / z; }, 0.0, std::nullopt};
  const auto m1 = spectral_measure_from_borel(inv, 1.0);
  CHECK(std::abs(m1.density(0.3) - 1.0 / (2.0 * kPi)) < 1e-15);
  CHECK_THROWS_AS(spectral_measure_from_borel(borel_exppoly(testing::cosine()), 0.5), Error);
}

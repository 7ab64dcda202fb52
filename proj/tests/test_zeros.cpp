#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "borelcalc/error.hpp"
#include "borelcalc/zeros.hpp"

using namespace borelcalc;

namespace {

std::vector<cx> imaginary_lattice(double spacing, double radius) {
  std::vector<cx> z;
  for (int k = 1; spacing * k <= radius; ++k) {
    z.emplace_back(0.0, spacing * k);
    z.emplace_back(0.0, -spacing * k);
  }
  return z;
}

std::vector<cx> squares(double radius) {
  std::vector<cx> z;
  for (int k = 1; double(k) * k <= radius; ++k) z.emplace_back(double(k) * k, 0.0);
  return z;
}

bool contains(const ZeroSet& Z, cx z, double tol, std::size_t mult = 1) {
  return std::any_of(Z.zeros.begin(), Z.zeros.end(),
                     [&](const Zero& w) { return std::abs(w.zeta - z) < tol && w.multiplicity == mult; });
}

}  // namespace

TEST_CASE("count_zeros") {
  CHECK(count_zeros(Symbol::parse("exp(z)-1"), Circle{0.0, 7.0}) == 3);
  CHECK(count_zeros(Symbol::parse("z^2+1"), Circle{0.0, 2.0}) == 2);
  CHECK(count_zeros(Symbol::parse("exp(z^2)"), Circle{0.0, 5.0}) == 0);
  CHECK(count_zeros(Symbol::parse("z^2+1"), Rectangle{-1.0, 1.0, 0.5, 1.5}) == 1);
  try {
    count_zeros(Symbol::parse("z^2+1"), Circle{0.0, 1.0});
    FAIL("expected ZeroOnContour");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroOnContour);
  }
}

TEST_CASE("argument_integral is close to an integer") {
  const cx v = argument_integral(Symbol::parse("z^3-2"), Circle{0.0, 2.0});
  CHECK(std::abs(v - 3.0) < 1e-9);
}

TEST_CASE("find_zeros: exponential minus one") {
  const ZeroSet Z = find_zeros(Symbol::parse("exp(z)-1"), 7.0);
  REQUIRE(Z.zeros.size() == 3);
  CHECK(Z.total() == 3);
  CHECK(contains(Z, 0.0, 1e-10));
  CHECK(contains(Z, cx(0.0, 2.0 * kPi), 1e-10));
  CHECK(contains(Z, cx(0.0, -2.0 * kPi), 1e-10));
  CHECK(std::abs(Z.zeros[0].zeta) < 1e-10);  // sorted by modulus
}

TEST_CASE("find_zeros: hyperbolic cosine symbol") {
  const ZeroSet Z = find_zeros(Symbol::parse("2*z*cosh(z)"), 5.0);
  REQUIRE(Z.zeros.size() == 5);
  for (cx z : {cx(0.0), cx(0.0, kPi / 2), cx(0.0, -kPi / 2), cx(0.0, 1.5 * kPi), cx(0.0, -1.5 * kPi)}) {
    CHECK(contains(Z, z, 1e-10));
  }
}

TEST_CASE("find_zeros: double zero") {
  const ZeroSet Z = find_zeros(Symbol::parse("z^2"), 1.0);
  REQUIRE(Z.zeros.size() == 1);
  CHECK(Z.zeros[0].multiplicity == 2);
  CHECK(std::abs(Z.zeros[0].zeta) < 1e-8);
  CHECK(Z.expanded().size() == 2);
}

TEST_CASE("find_zeros: clustered and multiple zeros") {
  const ZeroSet Z = find_zeros(Symbol::parse("(z-1)^3*(z+0.5*i)*(z-0.5*i)"), 2.0);
  CHECK(Z.total() == 5);
  CHECK(contains(Z, 1.0, 1e-6, 3));
  CHECK(contains(Z, cx(0.0, 0.5), 1e-10));
  CHECK(contains(Z, cx(0.0, -0.5), 1e-10));
  const ZeroSet none = find_zeros(Symbol::parse("exp(z)"), 3.0);
  CHECK(none.zeros.empty());
}

TEST_CASE("find_zeros: zero on the circle nudges the radius") {
  const ZeroSet Z = find_zeros(Symbol::parse("z^2+1"), 1.0);
  CHECK(Z.disk_radius != 1.0);
  CHECK(std::abs(Z.disk_radius - 1.0) < 1e-2);
  CHECK_THROWS_AS(find_zeros(Symbol::parse("z"), -1.0), Error);
}

TEST_CASE("counting functions") {
  const auto c = counting_functions(imaginary_lattice(2.0 * kPi, 100.0), {10.0});
  CHECK(c.n[0] == 2);
  CHECK(c.N[0] == doctest::Approx(2.0 * std::log(10.0 / (2.0 * kPi))).epsilon(1e-14));
  CHECK(c.N[0] == doctest::Approx(0.930).epsilon(1e-3));
  const auto d = counting_functions(std::vector<cx>{kI, -kI}, {std::exp(1.0)});
  CHECK(d.n[0] == 2);
  CHECK(d.N[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(counting_functions(std::vector<cx>{0.0, 1.0}, {2.0}), Error);
}

TEST_CASE("lattice union family against the mpmath oracle") {
  // Reference values from tests/oracles/density_oracle.py.
  const std::vector<double> r{100, 200, 500, 1000, 2000, 5000, 10000};
  const std::size_t n[] = {364, 734, 1842, 3694, 7396, 18500, 37004};
  const double N[] = {339.18939108392704, 705.12015734270298, 1809.8895499286267, 3656.18960621348,
                      7352.9434591122114, 18450.180990465367, 36950.582762771965};
  const auto Z = lattice_union_family(6, 1e4);
  CHECK(Z.size() == 37004);
  const auto c = counting_functions(Z, r);
  const double C = (2.0 - 2.0 / std::exp(1.0)) * (1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(c.n[i] == n[i]);
    CHECK(c.N[i] == doctest::Approx(N[i]).epsilon(1e-12));
    CHECK(c.N[i] >= C * r[i]);
  }
}

TEST_CASE("exponent of convergence") {
  CHECK(std::abs(exponent_of_convergence(imaginary_lattice(2.0 * kPi, 2e4), 2e4) - 1.0) < 0.1);
  CHECK(std::abs(exponent_of_convergence(squares(1e4), 1e4) - 0.5) < 0.1);
  CHECK(exponent_of_convergence(lattice_union_family(6, 1e4), 1e4) > 1.0);
  CHECK_THROWS_AS(exponent_of_convergence(squares(100.0), 100.0), Error);
}

TEST_CASE("Levinson check") {
  CHECK(levinson_check(imaginary_lattice(2.0 * kPi, 1e4), 1.0, 1e4).verdict == LevinsonVerdict::Bounded);
  CHECK(levinson_check(lattice_union_family(6, 1e4), 10.0, 1e4).verdict == LevinsonVerdict::DenseIndicated);
  CHECK(levinson_check(squares(1e8), 1.0, 1e4).verdict == LevinsonVerdict::Decreasing);
  CHECK(to_string(LevinsonVerdict::DenseIndicated) == "dense-indicated");
}

TEST_CASE("growth diagnostic") {
  const auto grid = log_grid(100.0, 1e4, 200);
  CHECK(tgb_diagnostic(lattice_union_family(6, 1e4), grid).verdict == GrowthVerdict::UnboundedIndicated);
  CHECK(tgb_diagnostic(squares(1e8), grid).verdict == GrowthVerdict::Bounded);
  // The rule reads only the sign of the top-decade slope, and N/r for the
  // imaginary lattice still creeps upward toward 1/π there.
  const auto lat = tgb_diagnostic(imaginary_lattice(2.0 * kPi, 1e4), grid);
  CHECK(lat.verdict == GrowthVerdict::UnboundedIndicated);
  CHECK(lat.slope < 1e-2);
  CHECK(to_string(GrowthVerdict::Bounded) == "bounded");
}

TEST_CASE("density report and grids") {
  const auto g = log_grid(100.0, 1e4, 3);
  CHECK(g[1] == doctest::Approx(1000.0).epsilon(1e-14));
  const auto rep = density_report(lattice_union_family(6, 1e4), log_grid(100.0, 1e4, 41), 10.0);
  CHECK(rep.linear_slope >= (2.0 - 2.0 / std::exp(1.0)) * 2.45);
  CHECK(rep.exponent_estimate > 1.0);
  CHECK(rep.growth.verdict == GrowthVerdict::UnboundedIndicated);
  // r_m lies in (m, 2m) and no two lattices share a point.
  const auto Z = lattice_union_family(6, 50.0);
  for (std::size_t i = 0; i < Z.size(); ++i) {
    for (std::size_t j = i + 1; j < Z.size(); ++j) CHECK(std::abs(Z[i] - Z[j]) > 1e-6);
  }
}

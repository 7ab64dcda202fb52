#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "borelcalc/calculus.hpp"
#include "borelcalc/error.hpp"
#include "borelcalc/solver.hpp"
#include "support.hpp"

using namespace borelcalc;

namespace {

double sup_on_grid(const ExpFunction& f, const std::function<cx(double)>& want) {
  double worst = 0.0;
  for (double x : uniform_grid(-3.0, 3.0, 61)) worst = std::max(worst, std::abs(evaluate(f, x) - want(x)));
  return worst;
}

}  // namespace

TEST_CASE("contour solve: second-order ODE") {
  const auto rep = solve_particular_contour(Symbol::parse("z^2+1"), ExpPoly::exponential(2.0));
  CHECK(sup_on_grid(rep.particular, [](double x) { return std::exp(2.0 * x) / 5.0; }) < 1e-9);
  CHECK(rep.residual < 1e-9);
  CHECK(std::get<Circle>(rep.contour_used).center == cx(2.0));
}

TEST_CASE("contour solve: zero-free shift symbol") {
  const auto rep = solve_particular_contour(Symbol::parse("exp(z)"), ExpPoly::exponential(1.0));
  CHECK(sup_on_grid(rep.particular, [](double x) { return std::exp(x - 1.0); }) < 1e-9);
}

TEST_CASE("contour solve: two-shift derivative symbol on cos") {
  SolveOptions o;
  o.R_hint = 1.25;
  const auto rep = solve_particular_contour(Symbol::parse("2*z*cosh(z)"), testing::cosine(), o);
  CHECK(sup_on_grid(rep.particular, [](double x) { return std::sin(x) / (2.0 * std::cos(1.0)); }) < 1e-7);
  CHECK(rep.residual < 1e-8);
}

TEST_CASE("contour solve: hint checks") {
  SolveOptions o;
  o.R_hint = 0.5;
  try {
    solve_particular_contour(Symbol::parse("2*z*cosh(z)"), testing::cosine(), o);
    FAIL("expected NoAdmissibleRadius");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoAdmissibleRadius);
  }
  o.R_hint = 1.5;  // ±iπ/2 lies within 0.1 of the circle
  try {
    solve_particular_contour(Symbol::parse("2*z*cosh(z)"), testing::cosine(), o);
    FAIL("expected ZeroOnContour");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroOnContour);
  }
}

TEST_CASE("contour solve from Taylor data") {
  const auto g = TaylorRep::from_exppoly(ExpPoly::exponential(cx(0.5, 0.0)));
  const auto rep = solve_particular_contour(Symbol::parse("z+2"), g);
  CHECK(sup_on_grid(rep.particular, [](double x) { return std::exp(0.5 * x) / 2.5; }) < 1e-9);
}

TEST_CASE("contour solve flags truncated symbols") {
  const auto rep = solve_particular_contour(Symbol::polynomial({1.0, 0.0, 1.0}, true), ExpPoly::exponential(2.0));
  CHECK(rep.warnings.size() == 1);
}

TEST_CASE("atomic solve") {
  const ExpPoly f = solve_particular_atomic(Symbol::parse("exp(z)"), ExpPoly::polynomial({0.0, 1.0}));
  for (double x : {-2.0, 0.0, 1.5}) CHECK(std::abs(f(x) - (x - 1.0)) < 1e-14);
  const ExpPoly e = solve_particular_atomic(Symbol::parse("z^2+1"), ExpPoly::exponential(2.0));
  REQUIRE(e.atoms().size() == 1);
  CHECK(std::abs(e.atoms()[0].poly[0] - 0.2) < 1e-16);
  const Symbol phi = Symbol::parse("z-1");
  const ExpPoly g = ExpPoly::exponential(2.0) + testing::cosine();
  const ExpPoly h = solve_particular_atomic(phi, g);
  CHECK(forward_residual(phi, h, g) < 1e-12);
  for (double x : {-1.0, 0.3}) {
    CHECK(std::abs(h(x) - (std::exp(2.0 * x) + (std::sin(x) - std::cos(x)) / 2.0)) < 1e-13);
  }
  try {
    solve_particular_atomic(phi, ExpPoly::exponential(1.0));
    FAIL("expected AtomOnZero");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::AtomOnZero);
  }
}

TEST_CASE("homogeneous bases") {
  const auto a = homogeneous_basis(Symbol::parse("z^2+1"), 2.0);
  REQUIRE(a.size() == 2);
  for (const auto& b : a) CHECK(std::abs(std::abs(b.atoms()[0].zeta) - 1.0) < 1e-10);
  const auto e = homogeneous_basis(Symbol::parse("exp(z)-1"), 7.0);
  REQUIRE(e.size() == 3);
  CHECK(std::abs(e[0].atoms()[0].zeta) < 1e-10);
  const auto d = homogeneous_basis(Symbol::parse("z^2"), 1.0);
  REQUIRE(d.size() == 2);
  CHECK(std::abs(d[0](2.5) - 1.0) < 1e-8);
  CHECK(std::abs(d[1](2.5) - 2.5) < 1e-7);
}

TEST_CASE("general solution") {
  const Symbol phi = Symbol::parse("z^2+1");
  const auto rep = general_solution(phi, ExpPoly::exponential(2.0), 2.0);
  CHECK(rep.homogeneous_basis.size() == 2);
  CHECK(rep.residual < 1e-12);
  CHECK(rep.warnings.empty());
  const auto none = general_solution(Symbol::parse("exp(z)"), ExpPoly::exponential(1.0), 5.0);
  CHECK(none.homogeneous_basis.empty());
  // Atom on a zero falls back to the contour.
  const auto res = general_solution(Symbol::parse("z-1"), ExpPoly::exponential(1.0), 2.0);
  CHECK(std::holds_alternative<TaylorRep>(res.particular));
  CHECK(res.residual < 1e-9);
}

TEST_CASE("particular solutions from two radii differ by a homogeneous term") {
  const Symbol phi = Symbol::parse("2*z*cosh(z)");
  SolveOptions small, large;
  small.R_hint = 1.25;
  large.R_hint = 2.5;  // also encloses ±iπ/2
  const auto a = solve_particular_contour(phi, testing::cosine(), small);
  const auto b = solve_particular_contour(phi, testing::cosine(), large);
  const auto basis = homogeneous_basis(phi, 2.0);
  const auto xs = uniform_grid(-3.0, 3.0, 61);
  Eigen::MatrixXcd A(xs.size(), basis.size());
  Eigen::VectorXcd d(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = 0; k < basis.size(); ++k) A(i, k) = basis[k](xs[i]);
    d(i) = evaluate(a.particular, xs[i]) - evaluate(b.particular, xs[i]);
  }
  const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(d);
  CHECK(d.norm() > 1e-3);
  CHECK((A * c - d).norm() < 1e-6);
}

TEST_CASE("initial value problems") {
  const auto c = ivp_solve(Symbol::parse("z^2+1"), ExpPoly{}, {1.0, 0.0}, 1.5);
  CHECK(sup_on_grid(c.solution, [](double x) { return std::cos(x); }) < 1e-12);
  const auto e = ivp_solve(Symbol::parse("z-2"), ExpPoly{}, {3.0}, 3.0);
  CHECK(sup_on_grid(e.solution, [](double x) { return 3.0 * std::exp(2.0 * x); }) < 1e-11);
  const auto p = ivp_solve(Symbol::parse("exp(z)-1"), ExpPoly{}, {1.0, 0.0, -4.0 * kPi * kPi}, 7.0);
  REQUIRE(p.coefficients.size() == 3);
  CHECK(std::abs(p.coefficients[0]) < 1e-8);
  CHECK(std::abs(p.coefficients[1] - 0.5) < 1e-8);
  CHECK(std::abs(p.coefficients[2] - 0.5) < 1e-8);
  CHECK(sup_on_grid(p.solution, [](double x) { return std::cos(2.0 * kPi * x); }) < 1e-8);
}

TEST_CASE("initial value problem with data") {
  const Symbol phi = Symbol::parse("z^2+1");
  const auto r = ivp_solve(phi, ExpPoly::exponential(2.0), {0.0, 0.0}, 1.5);
  const auto& f = r.solution;
  CHECK(std::abs(evaluate(f, 0.0)) < 1e-12);
  CHECK(std::abs(evaluate_derivative(f, 1, 0.0)) < 1e-12);
  CHECK(forward_residual(phi, f, ExpPoly::exponential(2.0)) < 1e-10);
}

TEST_CASE("initial value problem errors") {
  try {
    ivp_solve(Symbol::parse("z^2+1"), ExpPoly{}, {1.0}, 2.0);
    FAIL("expected CountMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CountMismatch);
  }
}

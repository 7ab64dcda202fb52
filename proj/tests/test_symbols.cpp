#include <doctest.h>

#include <cmath>

#include "borelcalc/error.hpp"
#include "borelcalc/numerics.hpp"
#include "borelcalc/symbols.hpp"

using namespace borelcalc;

TEST_CASE("parse: product with hyperbolic cosine") {
  const ExprPtr e = parse_symbol("2*z*cosh(z)");
  const ExprPtr want = expr::mul(expr::mul(expr::num(2.0), expr::var()), expr::func(Op::Cosh, expr::var()));
  CHECK(equal(e, want));
  CHECK(std::abs(eval_expr(e, 0.7) - 1.4 * std::cosh(0.7)) < 1e-15);
}

TEST_CASE("parse: exponential of a square") {
  const ExprPtr e = parse_symbol("exp(z^2)");
  REQUIRE(e->op == Op::Exp);
  CHECK(equal(e, expr::func(Op::Exp, expr::pow(expr::var(), 2))));
}

TEST_CASE("parse: quotient node") {
  const ExprPtr e = parse_symbol("(exp(z)-1)/z");
  REQUIRE(e->op == Op::Div);
  CHECK(equal(e->rhs, expr::var()));
}

TEST_CASE("parse: grammar extensions") {
  CHECK(std::abs(eval_expr(parse_symbol("-z^2"), 3.0) + 9.0) < 1e-15);
  CHECK(std::abs(eval_expr(parse_symbol("2^3^2"), 0.0) - 512.0) < 1e-12);
  CHECK(std::abs(eval_expr(parse_symbol("pi*i"), 0.0) - cx(0.0, kPi)) < 1e-15);
  CHECK(std::abs(eval_expr(parse_symbol("3i + sin(z)"), 0.0) - cx(0.0, 3.0)) < 1e-15);
  CHECK(std::abs(eval_expr(parse_symbol(" 1.5e1 * sinh( z ) "), 1.0) - 15.0 * std::sinh(1.0)) < 1e-13);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_symbol("2*z+");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(e.position() == 4);
  }
  try {
    parse_symbol("log(z)");
    FAIL("expected UnknownFunction");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::UnknownFunction);
    CHECK(e.position() == 0);
  }
  CHECK_THROWS_AS(parse_symbol("(z"), ParseError);
  CHECK_THROWS_AS(parse_symbol("z)"), ParseError);
  CHECK_THROWS_AS(parse_symbol(""), ParseError);
  CHECK_THROWS_AS(parse_symbol("z ² "), ParseError);
}

TEST_CASE("unparse round trips") {
  for (const char* text : {"2*z*cosh(z)", "exp(z^2)", "(exp(z)-1)/z", "-z+3.25*sin(z)^3", "z-(1-z)"}) {
    const ExprPtr e = parse_symbol(text);
    const ExprPtr back = parse_symbol(unparse(e));
    for (cx z : {cx(0.3, 0.1), cx(-1.2, 2.0)}) CHECK(std::abs(eval_expr(e, z) - eval_expr(back, z)) < 1e-13);
  }
}

TEST_CASE("eval_symbol") {
  CHECK(std::abs(eval_symbol(Symbol::parse("exp(z)-1"), cx(0.0, 2.0 * kPi))) < 1e-12);
  CHECK(std::abs(eval_symbol(Symbol::parse("(exp(z)-1)/z"), 0.0) - 1.0) < 1e-12);
  CHECK(std::abs(eval_symbol(Symbol::parse("exp(z^2)"), kI) - 0.36787944117144233) < 1e-12);
  CHECK_THROWS_AS(eval_symbol(Symbol::parse("exp(exp(z))"), 10.0), Error);
}

TEST_CASE("taylor_coeffs") {
  const auto e = taylor_coeffs(Symbol::parse("exp(z)"), 4);
  const double want_e[] = {1.0, 1.0, 0.5, 1.0 / 6.0};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e[k] - want_e[k]) < 1e-15);
  const auto q = taylor_coeffs(Symbol::parse("(exp(z)-1)/z"), 3);
  const double want_q[] = {1.0, 0.5, 1.0 / 6.0};
  for (int k = 0; k < 3; ++k) CHECK(std::abs(q[k] - want_q[k]) < 1e-15);
  const auto c = taylor_coeffs(Symbol::parse("2*z*cosh(z)"), 4);
  const double want_c[] = {0.0, 2.0, 0.0, 1.0};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(c[k] - want_c[k]) < 1e-15);
  const auto g = taylor_coeffs(Symbol::parse("exp(z^2)"), 9);
  CHECK(std::abs(g[8] - 1.0 / 24.0) < 1e-15);
  CHECK(std::abs(g[7]) < 1e-15);
  CHECK_THROWS_AS(taylor_coeffs(Symbol::parse("1/z"), 3), Error);
}

TEST_CASE("symbol_derivative") {
  CHECK(std::abs(symbol_derivative(Symbol::parse("exp(z)"), 5, 0.0) - 1.0) < 1e-10);
  CHECK(std::abs(symbol_derivative(Symbol::parse("z^2+1"), 1, 2.0) - 4.0) < 1e-14);
  CHECK(std::abs(symbol_derivative(Symbol::parse("2*z*cosh(z)"), 1, 0.0) - 2.0) < 1e-14);
  // Closed form and Cauchy route agree.
  const Symbol s = Symbol::parse("z*exp(z^2)/(2+z)");
  for (std::size_t j = 1; j <= 3; ++j) {
    CHECK(std::abs(symbol_derivative(s, j, cx(0.3, 0.2)) - cauchy_derivative(s, j, cx(0.3, 0.2))) < 1e-9);
  }
}

TEST_CASE("differentiate builds the expected tree") {
  const ExprPtr d = differentiate(parse_symbol("sin(z)*z"));
  CHECK(std::abs(eval_expr(d, 0.4) - (std::cos(0.4) * 0.4 + std::sin(0.4))) < 1e-15);
  const ExprPtr q = differentiate(parse_symbol("1/(1+z^2)"));
  CHECK(std::abs(eval_expr(q, 2.0) - (-4.0 / 25.0)) < 1e-15);
}

TEST_CASE("polynomial symbols and arithmetic") {
  const Symbol p = Symbol::polynomial({1.0, 0.0, 1.0}, true);
  CHECK(p.truncated());
  CHECK(std::abs(p(kI)) < 1e-15);
  CHECK(std::abs(p.derivative(1, 2.0) - 4.0) < 1e-15);
  const Symbol q = Symbol::parse("exp(z)") * p - Symbol::constant(2.0);
  CHECK(std::abs(q(1.0) - (2.0 * std::exp(1.0) - 2.0)) < 1e-13);
  CHECK(std::abs(q.derivative(1, 0.0) - 1.0) < 1e-12);
  const auto t = q.taylor(3);
  CHECK(std::abs(t[0] + 1.0) < 1e-14);
  CHECK(std::abs(t[2] - 1.5) < 1e-14);
}

TEST_CASE("series arithmetic") {
  const std::vector<cx> a{1.0, 1.0}, b{1.0, -1.0};
  const auto m = series::mul(a, b);
  CHECK(std::abs(m[0] - 1.0) < 1e-15);
  CHECK(std::abs(m[1]) < 1e-15);
  const auto d = series::div({1.0, 0.0, 0.0, 0.0}, {1.0, -1.0, 0.0, 0.0});
  for (const cx c : d) CHECK(std::abs(c - 1.0) < 1e-15);
  const auto e = series::exp({0.0, 1.0, 0.0, 0.0, 0.0});
  CHECK(std::abs(e[4] - 1.0 / 24.0) < 1e-15);
  CHECK(series::valuation({0.0, 0.0, 3.0}) == 2);
  CHECK_THROWS_AS(series::div({1.0, 0.0}, {0.0, 1.0}), Error);
}

#include <doctest.h>

#include <sstream>

#include "borelcalc/error.hpp"
#include "borelcalc/io.hpp"

using namespace borelcalc;

TEST_CASE("ExpPoly JSON round trip") {
  const ExpPoly f({ExpAtom{cx(0.0, 1.0), {0.5}}, ExpAtom{cx(2.0, 0.0), {0.1, cx(0.0, 3.0)}}});
  const ExpPoly g = io::parse_exppoly(io::dump_exppoly(f));
  REQUIRE(g.atoms().size() == f.atoms().size());
  for (std::size_t i = 0; i < f.atoms().size(); ++i) {
    CHECK(g.atoms()[i].zeta == f.atoms()[i].zeta);
    CHECK(g.atoms()[i].poly == f.atoms()[i].poly);
  }
}

TEST_CASE("Taylor and coefficient JSON") {
  const TaylorRep t = io::parse_taylor(R"({"coeffs":[[1,0],[0.5,-2]],"tau":1.5})");
  CHECK(t.tau == 1.5);
  CHECK(t.b[1] == cx(0.5, -2.0));
  const TaylorRep back = io::parse_taylor(io::dump_taylor(t));
  CHECK(back.b == t.b);
  CHECK(io::parse_coeffs(R"({"coeffs":[[1,0],[0,0],[1,0]]})").size() == 3);
}

TEST_CASE("malformed JSON is a format error") {
  for (const char* bad : {"{", R"({"atoms":3})", R"({"atoms":[{"zeta":[1],"poly":[[1,0]]}]})",
                          R"({"coeffs":[],"tau":1})", R"({"coeffs":[[1,0]],"tau":-1})"}) {
    try {
      if (std::string(bad).find("atoms") != std::string::npos || std::string(bad) == "{") {
        io::parse_exppoly(bad);
      } else {
        io::parse_taylor(bad);
      }
      FAIL("expected BadFormat");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadFormat);
    }
  }
}

TEST_CASE("samples CSV") {
  const SampledSignal s = io::parse_samples_csv("x,re,im\n-1,1,0\n-0.5,2,1\n0,3,-1\n");
  CHECK(s.x0 == -1.0);
  CHECK(s.dx == 0.5);
  CHECK(s.values[2] == cx(3.0, -1.0));
  std::ostringstream os;
  io::write_samples_csv(os, s);
  CHECK(os.str() == "x,re,im\n-1,1,0\n-0.5,2,1\n0,3,-1\n");
  CHECK_THROWS_AS(io::parse_samples_csv("x,y\n1,2\n"), Error);
  CHECK_THROWS_AS(io::parse_samples_csv("x,re,im\n0,1,0\n0.1,1,0\n0.25,1,0\n"), Error);
  CHECK_THROWS_AS(io::parse_samples_csv("x,re,im\n0,1,0\n0.1,abc,0\n"), Error);
}

TEST_CASE("zero CSV and number formatting") {
  ZeroSet Z{2.0, {Zero{cx(0.0, 0.0), 2}, Zero{cx(0.1, -1.0), 1}}};
  std::ostringstream os;
  io::write_zeros_csv(os, Z);
  CHECK(os.str() == "re,im,multiplicity\n0,0,2\n0.10000000000000001,-1,1\n");
  CHECK(io::format_double(1.0 / 3.0) == "0.33333333333333331");
}

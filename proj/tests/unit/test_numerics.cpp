#include "doctest.h"
#include "thompson/bigreal.hpp"
#include "thompson/numerics.hpp"

using namespace thompson;

TEST_CASE("rationals are canonical") {
  CHECK(make_rat(2, 4) == Rat(1, 2));
  CHECK(parse_rat("-6/8") == Rat(-3, 4));
  CHECK(to_string(parse_rat("10/5")) == "2");
  CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
  CHECK(floor_of(Rat(-7, 2)) == -4);
}

TEST_CASE("QuadIm arithmetic stays in one field") {
  QuadIm A(-1, 2, 3);  // -1 + 2 i sqrt3
  CHECK(norm(A) == 13);
  CHECK(A * conj(A) == QuadIm(13));
  QuadIm C(Rat(-1, 2), Rat(1, 2), 15);
  CHECK(norm(C) == 4);
  CHECK_THROWS_AS(A * C, std::domain_error);
  CHECK_THROWS_AS(A + C, std::domain_error);
  CHECK((A + conj(A)).is_rational());
  CHECK((A + conj(A)).radicand() == 0);
  CHECK(A / A == QuadIm(1));
  CHECK_THROWS_AS(QuadIm(1, 1, 5), std::invalid_argument);
  CHECK(parse_quadim("-1/2 1/2 15") == C);
  CHECK(parse_quadim("7 0 0") == QuadIm(7));
}

TEST_CASE("QuadSum keeps radicands apart") {
  QuadSum s;
  s += QuadIm(-1, 2, 3);
  s += QuadIm(Rat(-1, 2), Rat(1, 2), 15);
  CHECK_FALSE(s.is_rational());
  s += QuadIm(-1, -2, 3);
  s += QuadIm(Rat(-1, 2), Rat(-1, 2), 15);
  CHECK(s.to_rational() == -3);
}

TEST_CASE("BigReal basics") {
  BigReal x(2L, 128);
  BigReal r = sqrt(x);
  CHECK(abs(r * r - x) < BigReal(1e-36, 128));
  CHECK(BigReal(2.5, 64).round_to_integer() == 2);
  CHECK(BigReal(-3.5, 64).round_to_integer() == -4);
  BigReal lo(1L, 64), hi(1L, 256);
  lo += hi;
  CHECK(lo.precision() == 256);
  CHECK(distance_to_integer(BigReal(7.25, 64)).to_double() == doctest::Approx(0.25));
  BigReal z = BigReal::zeta(BigReal(2L, 128));
  BigReal pi = BigReal::pi(128);
  CHECK(abs(z - pi * pi / BigReal(6L, 128)) < BigReal(1e-35, 128));
}

TEST_CASE("quadim conj, norm and to_complex") {
  const QuadIm A(-1, 2, 3);
  CHECK(quadim_conj(A) == QuadIm(-1, -2, 3));
  CHECK(quadim_conj(QuadIm(5)) == QuadIm(5));
  const QuadIm G(Rat(-1, 2), Rat(1, 2), 31);
  CHECK(quadim_conj(quadim_conj(G)) == G);
  CHECK(quadim_norm(A) == 13);
  CHECK(quadim_norm(QuadIm(0)) == 0);
  CHECK(quadim_norm(G) == 8);
  CHECK(quadim_norm(A * A) == quadim_norm(A) * quadim_norm(A));

  const BigComplex one = to_complex(QuadIm(1), 128);
  CHECK(one.re.to_double() == 1.0);
  CHECK(one.im.is_zero());
  const BigComplex d = to_complex(QuadIm(0, -1, 3), 128);
  const BigReal s3 = sqrt(BigReal(3L, 256));
  CHECK(abs(d.im + s3) < BigReal(std::ldexp(1.0, 3 - 128), 256) * (BigReal(1L, 256) + s3));
  CHECK(d.re.is_zero());
  const BigComplex c = to_complex(G, 128), cc = to_complex(quadim_conj(G), 128);
  CHECK(c.re == cc.re);
  CHECK(c.im == -cc.im);
  // + and x against doubled precision
  const QuadIm x(Rat(3, 7), Rat(-5, 11), 39), y(Rat(-2, 3), Rat(1, 13), 39);
  for (const QuadIm& e : {x + y, x * y}) {
    const BigComplex lo = to_complex(e, 128), hi = to_complex(e, 256);
    const BigComplex prod_lo = e == x + y ? to_complex(x, 128) + to_complex(y, 128)
                                          : to_complex(x, 128) * to_complex(y, 128);
    CHECK(abs(prod_lo - hi) < BigReal(1e-35, 256));
    CHECK(abs(lo - hi) < BigReal(1e-36, 256));
  }
}

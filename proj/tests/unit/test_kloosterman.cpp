#include <gmpxx.h>

#include "doctest.h"
#include "thompson/kloosterman.hpp"

using namespace thompson;

namespace {

double cabs(const BigComplex& z) { return abs(z).to_double(); }

// Legendre symbol by listing squares.
int legendre_bruteforce(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return 0;
  for (i64 x = 1; x < p; ++x) {
    if (x * x % p == a) return 1;
  }
  return -1;
}

}  // namespace

TEST_CASE("kronecker symbol") {
  CHECK(kronecker(4, 3) == 1);
  for (i64 c = -20; c <= 20; ++c) CHECK(kronecker(c, 1) == 1);
  for (i64 p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
    for (i64 c = 0; c < p; ++c) CHECK(kronecker(c, p) == legendre_bruteforce(c, p));
  }
  // GMP's implementation of the extended symbol as an independent oracle.
  for (i64 c = -40; c <= 40; ++c) {
    for (i64 d = -40; d <= 40; ++d) {
      CHECK(kronecker(c, d) == mpz_kronecker(mpz_class(c).get_mpz_t(), mpz_class(d).get_mpz_t()));
    }
  }
}

TEST_CASE("epsilon and psi") {
  CHECK(cabs(epsilon(1) - BigComplex{BigReal(1L, 128), BigReal(128)}) < 1e-30);
  CHECK(cabs(epsilon(3) - BigComplex{BigReal(128), BigReal(1L, 128)}) < 1e-30);
  for (i64 d = -21; d < 21; d += 2) CHECK(cabs(epsilon(d + 4) - epsilon(d)) == 0.0);
  CHECK_THROWS_AS(epsilon(4), std::invalid_argument);
  MultiplierParams p{3, 1, 3};
  CHECK(cabs(psi_value(p, 36, 1) - BigComplex{BigReal(1L, 128), BigReal(128)}) < 1e-30);
  MultiplierParams triv{5, 0, 1};
  MultiplierParams other{24, 37, 48};
  for (i64 d = 1; d < 30; ++d) {
    CHECK(cabs(psi_value(triv, 20 * d, d) - BigComplex{BigReal(1L, 128), BigReal(128)}) < 1e-30);
    CHECK(abs(abs(psi_value(other, 96 * d, d)) - BigReal(1L, 128)).to_double() < 1e-30);
  }
  CHECK_THROWS(MultiplierParams{5, 1, 8}.validate());
}

TEST_CASE("Kloosterman sums: small cases") {
  BigComplex k = kloosterman_sum(-3, 0, 4, std::nullopt);
  CHECK(k.re.to_double() == doctest::Approx(1.0));
  CHECK(k.im.to_double() == doctest::Approx(1.0));
  // 8 || c with m - n odd does not vanish: 4 e(1/8) by hand.
  BigComplex k018 = kloosterman_sum(0, 1, 8, std::nullopt);
  CHECK(k018.re.to_double() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(k018.im.to_double() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(cabs(kloosterman_sum(0, 2, 8, std::nullopt)) < 1e-20);
  CHECK(cabs(kloosterman_sum(0, 1, 16, std::nullopt)) < 1e-20);
  CHECK_THROWS_AS(kloosterman_sum(1, 1, 6, std::nullopt), std::invalid_argument);
}

TEST_CASE("Kloosterman sums are symmetric in m and n") {
  for (i64 c = 4; c <= 64; c += 4) {
    for (i64 m = -8; m <= 8; ++m) {
      for (i64 n = -8; n <= 8; ++n) {
        CHECK(cabs(kloosterman_sum(m, n, c, std::nullopt, 64) - kloosterman_sum(n, m, c, std::nullopt, 64)) < 1e-12);
      }
    }
  }
}

TEST_CASE("factored evaluation matches the direct sum") {
  for (i64 c = 4; c <= 256; c += 4) {
    for (i64 m = -3; m <= 5; ++m) {
      for (i64 n = -3; n <= 5; ++n) {
        BigComplex direct = kloosterman_sum(m, n, c, std::nullopt, 128);
        BigComplex fast = kloosterman_factored(m, n, c, 128);
        INFO("m=" << m << " n=" << n << " c=" << c);
        CHECK(cabs(direct - fast) < 1e-20);
      }
    }
  }
}

TEST_CASE("factored evaluation: larger moduli and arguments") {
  // Prime powers, repeated 2-adic factors and arguments divisible by the
  // primes involved exercise every branch of the odd and 2-adic factors.
  for (i64 c : {4 * 9 * 25, 4 * 27, 4 * 81, 4 * 125, 4 * 343, 4 * 49 * 3, 64 * 27, 128 * 9, 512, 1024 * 3, 2048 * 5,
                4 * 11 * 11 * 3, 8 * 13 * 13, 16 * 3 * 3 * 3 * 3 * 3}) {
    for (i64 m : {-3, 0, 1, 9, 25, 27}) {
      for (i64 n : {0, 1, 4, 5, 45, 75, 243, 1000}) {
        BigComplex direct = kloosterman_sum(m, n, c, std::nullopt, 96);
        Complex<double> fast = kloosterman_factored_double(m, n, c);
        INFO("m=" << m << " n=" << n << " c=" << c);
        CHECK(std::hypot(direct.re.to_double() - fast.re, direct.im.to_double() - fast.im) < 1e-9);
      }
    }
  }
}

TEST_CASE("vanishing predicate matches the direct sum") {
  CHECK(vanishing_predicate(0, 1, 16));
  CHECK(vanishing_predicate(0, 2, 8));
  CHECK_FALSE(vanishing_predicate(0, 1, 8));
  CHECK_FALSE(vanishing_predicate(1, 5, 8));
  CHECK_FALSE(vanishing_predicate(3, 0, 12));
  for (i64 c = 8; c <= 256; c += 8) {
    for (i64 m = 0; m <= 12; ++m) {
      for (i64 n = 0; n <= 12; ++n) {
        double k = cabs(kloosterman_sum(m, n, c, std::nullopt, 64));
        INFO("m=" << m << " n=" << n << " c=" << c);
        if (vanishing_predicate(m, n, c)) {
          CHECK(k < 1e-15 * c);
        } else if (mod(m - n, 4) != 0) {
          // Remaining m != n (mod 4) cases have 8 || c and m - n odd.
          CHECK(c % 16 != 0);
          CHECK(mod(m - n, 2) == 1);
        }
      }
    }
  }
}

TEST_CASE("terms at d and d + c/2 cancel for 16 | c and m - n odd") {
  const i64 c = 16;
  for (i64 m = 0; m < 4; ++m) {
    for (i64 n = 0; n < 4; ++n) {
      if ((m - n) % 2 == 0) continue;
      for (i64 d = 1; d < c / 2; d += 2) {
        auto term = [&](i64 dd) {
          i64 k = mod(m * invmod(dd, c) + n * dd, c) * 4;
          if (dd % 4 == 3) k += 16;
          if (kronecker(c, dd) < 0) k += 32;
          return RealOps<BigReal>::unit_root(mod(k, 64), 64, 64);
        };
        CHECK(cabs(term(d) + term(d + c / 2)) < 1e-15);
      }
    }
  }
}

TEST_CASE("multiplier folds into a shift of n") {
  MultiplierParams p{6, 5, 6};
  for (i64 c = 24; c <= 24 * 12; c += 24) {
    for (i64 n : {0, 1, 4, 5}) {
      BigComplex with = kloosterman_sum(-3, n, c, p, 96);
      BigComplex shifted = kloosterman_sum(-3, shifted_n(p, n, c), c, std::nullopt, 96);
      CHECK(cabs(with - shifted) < 1e-20);
    }
  }
}

TEST_CASE("crude size bound") {
  for (i64 c = 4; c <= 400; c += 4) {
    CHECK(cabs(kloosterman_sum(-3, 5, c, std::nullopt, 64)) <= 2.0 * c);
  }
}

#include <random>

#include "doctest.h"
#include "thompson/qseries.hpp"

using namespace thompson;

namespace {

QSeries poly(std::map<i64, Rat> t, std::optional<Rat> trunc = std::nullopt) {
  return QSeries::from_integer_terms(t, trunc);
}

}  // namespace

TEST_CASE("series arithmetic") {
  QSeries f = poly({{-1, 1}, {0, 1}});
  QSeries g = poly({{1, 1}, {2, -1}});
  CHECK(f * g == poly({{0, 1}, {2, -1}}));
  CHECK(f * QSeries::one() == f);
  CHECK((f - f).is_zero());
  QSeries half = QSeries::monomial(3, Rat(1, 2));
  CHECK((half + f).denom() == 2);
  CHECK((half * half).denom() == 1);
  CHECK((half * half).coeff(1) == 9);
}

TEST_CASE("multiplication matches a convolution oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9), expo(-5, 40);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<i64, Rat> a, b;
    for (int i = 0; i < 20; ++i) {
      a[expo(rng)] += coef(rng);
      b[expo(rng)] += coef(rng);
    }
    QSeries fa = poly(a, Rat(60)), fb = poly(b, Rat(60));
    QSeries prod = fa * fb;
    std::map<i64, Rat> naive;
    for (auto& [i, x] : a)
      for (auto& [j, y] : b) naive[i + j] += x * y;
    const Rat t = *prod.trunc_order();
    for (auto& [k, c] : naive) {
      if (Rat(k) < t) CHECK(prod.coeff(k) == c);
    }
  }
}

TEST_CASE("inversion") {
  QSeries one_minus_q = poly({{0, 1}, {1, -1}}, Rat(30));
  QSeries inv = invert(one_minus_q);
  for (i64 k = 0; k < 30; ++k) CHECK(inv.coeff(k) == 1);
  CHECK(invert(QSeries::monomial(1, -1)) == QSeries::monomial(1, 1));
  CHECK_THROWS(invert(QSeries::zero(Rat(5))));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<i64, Rat> a{{-2, 3}};
    for (int i = 0; i < 10; ++i) a[static_cast<i64>(rng() % 20) - 1] += static_cast<int>(rng() % 7) - 3;
    a[-2] = 3;
    QSeries f = poly(a, Rat(25));
    QSeries e = f * invert(f) - QSeries::one();
    CHECK(e.is_zero());
  }
}

TEST_CASE("log and exp") {
  QSeries q = poly({{1, 1}}, Rat(10));
  QSeries l = log1p_series(q);
  CHECK(l.coeff(1) == 1);
  CHECK(l.coeff(2) == Rat(-1, 2));
  CHECK(l.coeff(3) == Rat(1, 3));
  CHECK(log1p_series(QSeries::zero(Rat(5))).is_zero());
  CHECK_THROWS(log1p_series(poly({{0, 1}}, Rat(5))));
  QSeries g = poly({{1, 2}, {2, -3}, {5, Rat(1, 7)}}, Rat(15));
  QSeries back = exp_series(log1p_series(g));
  CHECK((back - (QSeries::one() + g)).is_zero());
}

TEST_CASE("eta quotients and theta functions") {
  QSeries x = eta_expansion(EtaQuotient::parse("1^24/2^24"), Rat(3));
  CHECK(x.coeff(-1) == 1);
  CHECK(x.coeff(0) == -24);
  CHECK(x.coeff(1) == 276);
  CHECK(x.coeff(2) == -2048);
  QSeries th = theta_series(1, Rat(200));
  CHECK(eta_expansion(EtaQuotient::parse("2^5/1^2.4^2"), Rat(200)) == th);
  CHECK(th.coeff(0) == 1);
  CHECK(th.coeff(9) == 2);
  CHECK(th.coeff(8) == 0);
  QSeries th4 = theta_series(2, Rat(40));
  CHECK(th4.coeff(4) == 2);
  CHECK(th4.coeff(1) == 0);
  CHECK(th4.coeff(16) == 2);
  QSeries th1 = eta_expansion(EtaQuotient::parse("4^2/2^1"), Rat(50)) * Rat(2);
  for (i64 k = 0; k < 13; ++k) {
    Rat e = Rat(2 * k + 1, 2);
    e *= e;
    if (e < 50) CHECK(th1.coeff(e) == 2);
  }
  CHECK(th1.coeff(Rat(5, 4)) == 0);
  // theta0 + theta1 is supported exactly on {k^2/4}.
  QSeries both = th + th1;
  for (const auto& [e, c] : substitute_scale(both, 4).terms()) {
    CHECK(is_integer(e));
    CHECK(mpz_perfect_square_p(e.get_num_mpz_t()));
  }
  CHECK(theta_coefficient(3, 9) == 2);
  CHECK(theta_coefficient(3, 36) == 2);
  CHECK(theta_coefficient(3, 18) == 0);
  CHECK(theta_coefficient(6, 0) == 1);
}

TEST_CASE("quarter substitution") {
  QSeries q4 = QSeries::monomial(1, 4);
  CHECK(substitute_quarter(q4) == QSeries::monomial(1, 1));
  QSeries f = poly({{-3, 2}, {1, 5}, {5, 7}}, Rat(9));
  QSeries g = substitute_quarter(f);
  CHECK(g.coeff(Rat(-3, 4)) == 2);
  CHECK(g.coeff(Rat(1, 4)) == 5);
  CHECK(*g.trunc_order() == Rat(9, 4));
  CHECK(substitute_scale(g, 4) == f);
}

TEST_CASE("Sturm bound") {
  CHECK(sturm_bound(10, 1152) == 1920);
  CHECK(sturm_bound(2, 1) == 1);
  CHECK(gamma0_index(4) == 6);
  CHECK(sturm_bound(2, 4) == 1);
}

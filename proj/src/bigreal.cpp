#include "thompson/bigreal.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace thompson {

namespace {

void check_prec(int prec) {
  if (prec < MPFR_PREC_MIN || prec > 1 << 20) {
    throw std::invalid_argument("precision out of range: " + std::to_string(prec));
  }
}

}  // namespace

BigReal::BigReal(int prec) {
  check_prec(prec);
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(double v, int prec) : BigReal(prec) { mpfr_set_d(v_, v, MPFR_RNDN); }
BigReal::BigReal(long v, int prec) : BigReal(prec) { mpfr_set_si(v_, v, MPFR_RNDN); }
BigReal::BigReal(const Int& v, int prec) : BigReal(prec) {
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}
BigReal::BigReal(const Rat& v, int prec) : BigReal(prec) {
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}
BigReal::BigReal(const std::string& decimal, int prec) : BigReal(prec) {
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("bad decimal: " + decimal);
  }
}

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

void BigReal::widen(int prec) {
  if (prec > precision()) mpfr_prec_round(v_, prec, MPFR_RNDN);
}

Int BigReal::round_to_integer() const {
  if (!is_finite()) throw std::domain_error("rounding a non-finite value");
  Int z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

std::string BigReal::to_string(int digits) const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, mpfr_free_str);
  mpfr_exp_t e = 0;
  buf.reset(mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN));
  std::string m(buf.get());
  std::string sgn;
  if (!m.empty() && m[0] == '-') {
    sgn = "-";
    m.erase(0, 1);
  }
  if (is_zero()) return "0";
  return sgn + "0." + m + "e" + std::to_string(e);
}

long BigReal::exponent2() const {
  if (is_zero() || !is_finite()) return -(1L << 40);
  return static_cast<long>(mpfr_get_exp(v_)) - 1;
}

BigReal& BigReal::operator+=(const BigReal& o) {
  widen(o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator-=(const BigReal& o) {
  widen(o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(const BigReal& o) {
  widen(o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(const BigReal& o) {
  widen(o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator+=(double o) {
  mpfr_add_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(double o) {
  mpfr_mul_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

namespace {
int max_prec(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigReal BigReal::pi(int prec) {
  BigReal r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::zeta(const BigReal& s) {
  BigReal r(s.precision());
  mpfr_zeta(r.v_, s.v_, MPFR_RNDN);
  return r;
}

#define THOMPSON_UNARY(name, fn)               \
  BigReal name(const BigReal& x) {             \
    BigReal r(x.precision());                  \
    fn(r.get(), x.get(), MPFR_RNDN);           \
    return r;                                  \
  }
THOMPSON_UNARY(abs, mpfr_abs)
THOMPSON_UNARY(sqrt, mpfr_sqrt)
THOMPSON_UNARY(exp, mpfr_exp)
THOMPSON_UNARY(log, mpfr_log)
THOMPSON_UNARY(sinh, mpfr_sinh)
THOMPSON_UNARY(cos, mpfr_cos)
THOMPSON_UNARY(sin, mpfr_sin)
#undef THOMPSON_UNARY

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r(max_prec(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, double y) { return pow(x, BigReal(y, x.precision())); }

BigReal distance_to_integer(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_rint(r.get(), x.get(), MPFR_RNDN);
  return abs(x - r);
}

BigReal abs(const BigComplex& z) {
  BigReal r(max_prec(z.re, z.im));
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

BigComplex RealOps<BigReal>::unit_root(long num, long den, int prec) {
  // 2*pi*num/den with num in [0, den): the argument is formed exactly up to
  // one rounding, then sin/cos are correctly rounded by MPFR.
  BigReal t = BigReal::pi(prec + 16);
  t *= BigReal(2L * num, prec + 16);
  t /= BigReal(den, prec + 16);
  BigComplex z{BigReal(prec), BigReal(prec)};
  mpfr_sin_cos(z.im.get(), z.re.get(), t.get(), MPFR_RNDN);
  return z;
}

}  // namespace thompson

namespace thompson {

BigComplex to_complex(const QuadIm& x, int prec) {
  if (prec < 53) throw std::invalid_argument("to_complex needs at least 53 bits");
  BigReal re(x.re(), prec);
  BigReal im(x.im_coeff(), prec);
  if (x.radicand() != 0) im *= sqrt(BigReal(static_cast<long>(x.radicand()), prec));
  return {re, im};
}

}  // namespace thompson

#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "thompson/numerics.hpp"

namespace thompson {

inline constexpr int kDefaultPrecision = 128;

// RAII wrapper around mpfr_t. Every value carries its own precision; binary
// operations produce max(lhs, rhs) bits and compound assignment widens the
// left operand rather than rounding the right one down.
class BigReal {
 public:
  explicit BigReal(int prec = kDefaultPrecision);
  BigReal(double v, int prec);
  BigReal(long v, int prec);
  BigReal(const Int& v, int prec);
  BigReal(const Rat& v, int prec);
  BigReal(const std::string& decimal, int prec);
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  // Raises precision in place (value is kept exactly).
  void widen(int prec);

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Nearest integer (ties to even).
  Int round_to_integer() const;
  std::string to_string(int digits = 0) const;
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // floor(log2|x|) for nonzero x; very negative for zero.
  long exponent2() const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator+=(double o);
  BigReal& operator*=(double o);
  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, double b) { BigReal r(a); r *= b; return r; }
  friend BigReal operator*(double a, const BigReal& b) { return b * a; }

  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_); }

  static BigReal pi(int prec);
  static BigReal zeta(const BigReal& s);

 private:
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, double y);
// Distance from x to the nearest integer.
BigReal distance_to_integer(const BigReal& x);

// Minimal complex type usable for both double and BigReal (std::complex is
// only specified for builtin floating types).
template <class R>
struct Complex {
  R re;
  R im;

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    R r = re * o.re - im * o.im;
    R i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const R& s) { a.re = a.re * s; a.im = a.im * s; return a; }
};

template <class R>
Complex<R> conj(const Complex<R>& z) { return {z.re, -z.im}; }

using BigComplex = Complex<BigReal>;
using DComplex = Complex<double>;

BigReal abs(const BigComplex& z);

// a + b i sqrt(d) at the given precision (>= 53 bits).
BigComplex to_complex(const QuadIm& x, int prec = kDefaultPrecision);

// Scalar helpers shared by the double and MPFR code paths. prec is ignored
// for double.
template <class R>
struct RealOps;

template <>
struct RealOps<double> {
  static double from_int(long v, int) { return static_cast<double>(v); }
  static double from_double(double v, int) { return v; }
  static double pi(int) { return M_PI; }
  static double sqrt(double x) { return std::sqrt(x); }
  static double sinh(double x) { return std::sinh(x); }
  static double pow(double x, double y) { return std::pow(x, y); }
  // e(num/den) with num already reduced to [0, den).
  static DComplex unit_root(long num, long den, int) {
    double t = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
  }
};

template <>
struct RealOps<BigReal> {
  static BigReal from_int(long v, int prec) { return BigReal(v, prec); }
  static BigReal from_double(double v, int prec) { return BigReal(v, prec); }
  static BigReal pi(int prec) { return BigReal::pi(prec); }
  static BigReal sqrt(const BigReal& x) { return thompson::sqrt(x); }
  static BigReal sinh(const BigReal& x) { return thompson::sinh(x); }
  static BigReal pow(const BigReal& x, double y) { return thompson::pow(x, y); }
  static BigComplex unit_root(long num, long den, int prec);
};

}  // namespace thompson

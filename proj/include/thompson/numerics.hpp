#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace thompson {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical rational from numerator/denominator; throws on zero denominator.
Rat make_rat(const Int& num, const Int& den);
// Accepts "a", "-a", "a/b".
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
bool is_integer(const Rat& r);
Int floor_of(const Rat& r);

// Radicands that occur in the character table (0 means rational).
bool is_allowed_radicand(int d);

// a + b*i*sqrt(d), d in {0, 3, 6, 15, 31, 39}. When b == 0 the radicand is
// normalised to 0 so that rational values compare equal regardless of origin.
class QuadIm {
 public:
  QuadIm() = default;
  QuadIm(const Rat& a);  // NOLINT: implicit from rationals is intended
  QuadIm(long a) : QuadIm(Rat(a)) {}  // NOLINT
  QuadIm(const Rat& a, const Rat& b, int d);

  const Rat& re() const { return a_; }
  const Rat& im_coeff() const { return b_; }
  int radicand() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadIm& operator+=(const QuadIm& o);
  QuadIm& operator-=(const QuadIm& o);
  QuadIm& operator*=(const QuadIm& o);
  QuadIm& operator/=(const QuadIm& o);

  friend QuadIm operator+(QuadIm x, const QuadIm& y) { return x += y; }
  friend QuadIm operator-(QuadIm x, const QuadIm& y) { return x -= y; }
  friend QuadIm operator*(QuadIm x, const QuadIm& y) { return x *= y; }
  friend QuadIm operator/(QuadIm x, const QuadIm& y) { return x /= y; }
  friend QuadIm operator-(const QuadIm& x) { return QuadIm(-x.a_, -x.b_, x.d_); }
  friend bool operator==(const QuadIm& x, const QuadIm& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

 private:
  // Radicand shared by both operands; throws std::domain_error when the two
  // live in different quadratic fields.
  int common_radicand(const QuadIm& o) const;
  void normalise();

  Rat a_{0};
  Rat b_{0};
  int d_{0};
};

QuadIm conj(const QuadIm& x);
// x * conj(x), always rational.
Rat norm(const QuadIm& x);
// Parses the "a b d" triple used in data files.
inline QuadIm quadim_conj(const QuadIm& x) { return conj(x); }
inline Rat quadim_norm(const QuadIm& x) { return norm(x); }

QuadIm parse_quadim(std::string_view triple);
std::string to_string(const QuadIm& x);

// Exact accumulator for sums whose terms come from different quadratic fields
// (e.g. a sum over all classes). Since 1, i*sqrt(3), i*sqrt(6), ... are
// linearly independent over Q, the total is rational iff every imaginary
// component cancels.
class QuadSum {
 public:
  QuadSum& operator+=(const QuadIm& x);
  QuadSum& operator-=(const QuadIm& x);
  const Rat& rational_part() const { return re_; }
  bool is_rational() const;
  // Throws std::domain_error if an imaginary component survives.
  Rat to_rational() const;
  std::string residue_description() const;

 private:
  Rat re_{0};
  std::map<int, Rat> im_;
};

}  // namespace thompson

#include "thompson/numerics.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace thompson {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational: '" + s + "'");
  }
}

std::string to_string(const Rat& r) { return r.get_str(); }

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Int floor_of(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

bool is_allowed_radicand(int d) {
  switch (d) {
    case 0: case 3: case 6: case 15: case 31: case 39: return true;
    default: return false;
  }
}

QuadIm::QuadIm(const Rat& a) : a_(a) {}

QuadIm::QuadIm(const Rat& a, const Rat& b, int d) : a_(a), b_(b), d_(d) {
  if (!is_allowed_radicand(d)) {
    throw std::invalid_argument("unsupported radicand " + std::to_string(d));
  }
  if (d == 0 && b != 0) throw std::invalid_argument("imaginary part with radicand 0");
  normalise();
}

void QuadIm::normalise() {
  if (b_ == 0) d_ = 0;
}

int QuadIm::common_radicand(const QuadIm& o) const {
  if (d_ == 0) return o.d_;
  if (o.d_ == 0 || o.d_ == d_) return d_;
  throw std::domain_error("mixing i*sqrt(" + std::to_string(d_) + ") with i*sqrt(" +
                          std::to_string(o.d_) + ")");
}

QuadIm& QuadIm::operator+=(const QuadIm& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalise();
  return *this;
}

QuadIm& QuadIm::operator-=(const QuadIm& o) {
  d_ = common_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalise();
  return *this;
}

QuadIm& QuadIm::operator*=(const QuadIm& o) {
  int d = common_radicand(o);
  Rat a = a_ * o.a_ - b_ * o.b_ * d;
  Rat b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalise();
  return *this;
}

QuadIm& QuadIm::operator/=(const QuadIm& o) {
  Rat n = norm(o);
  if (n == 0) throw std::domain_error("division by zero QuadIm");
  *this *= conj(o);
  a_ /= n;
  b_ /= n;
  normalise();
  return *this;
}

QuadIm conj(const QuadIm& x) { return QuadIm(x.re(), -x.im_coeff(), x.radicand()); }

Rat norm(const QuadIm& x) {
  return x.re() * x.re() + x.im_coeff() * x.im_coeff() * x.radicand();
}

QuadIm parse_quadim(std::string_view triple) {
  std::istringstream in{std::string(triple)};
  std::string a, b, d, extra;
  if (!(in >> a >> b >> d) || (in >> extra)) {
    throw std::invalid_argument("expected 'a b d' triple, got '" + std::string(triple) + "'");
  }
  int rad = 0;
  try {
    rad = std::stoi(d);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad radicand in '" + std::string(triple) + "'");
  }
  return QuadIm(parse_rat(a), parse_rat(b), rad);
}

std::string to_string(const QuadIm& x) {
  if (x.is_rational()) return to_string(x.re());
  std::string s = to_string(x.re());
  Rat b = x.im_coeff();
  s += b < 0 ? "-" : "+";
  s += to_string(abs(b)) + "i*sqrt(" + std::to_string(x.radicand()) + ")";
  return s;
}

QuadSum& QuadSum::operator+=(const QuadIm& x) {
  re_ += x.re();
  if (!x.is_rational()) {
    Rat& slot = im_[x.radicand()];
    slot += x.im_coeff();
  }
  return *this;
}

QuadSum& QuadSum::operator-=(const QuadIm& x) { return *this += -x; }

bool QuadSum::is_rational() const {
  for (const auto& [d, b] : im_) {
    if (b != 0) return false;
  }
  return true;
}

Rat QuadSum::to_rational() const {
  if (!is_rational()) {
    throw std::domain_error("sum is not rational: " + residue_description());
  }
  return re_;
}

std::string QuadSum::residue_description() const {
  std::string s = to_string(re_);
  for (const auto& [d, b] : im_) {
    if (b != 0) s += " + (" + to_string(b) + ")i*sqrt(" + std::to_string(d) + ")";
  }
  return s;
}

}  // namespace thompson

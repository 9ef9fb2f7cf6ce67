#include "thompson/qseries.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thompson {

namespace {

using Trunc = std::optional<Rat>;

Trunc min_trunc(const Trunc& a, const Trunc& b) {
  if (!a) return b;
  if (!b) return a;
  return *a < *b ? a : b;
}

Trunc add_trunc(const Trunc& t, const Trunc& v) {
  if (!t || !v) return std::nullopt;
  return Rat(*t + *v);
}

// Smallest integer k with k/L >= t, i.e. stored keys must be < this bound.
i64 key_limit(const Rat& t, i64 L) {
  Rat x = t * L;
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (!c.fits_slong_p()) throw std::overflow_error("truncation order too large");
  return c.get_si();
}

i64 lcm(i64 a, i64 b) { return a / gcd(a, b) * b; }

// Dense integer power series helpers (index = exponent), truncated to K terms.
using Dense = std::vector<Int>;

Dense dense_mul(const Dense& a, const Dense& b, std::size_t K) {
  Dense r(K, 0);
  for (std::size_t i = 0; i < a.size() && i < K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < K; ++j) {
      if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

// Inverse of a series with constant term 1.
Dense dense_inv(const Dense& a, std::size_t K) {
  Dense r(K, 0);
  if (K == 0) return r;
  r[0] = 1;
  std::vector<std::size_t> nz;
  for (std::size_t j = 1; j < a.size() && j < K; ++j) {
    if (a[j] != 0) nz.push_back(j);
  }
  for (std::size_t k = 1; k < K; ++k) {
    Int s = 0;
    for (std::size_t j : nz) {
      if (j > k) break;
      s += a[j] * r[k - j];
    }
    r[k] = -s;
  }
  return r;
}

Dense dense_pow(Dense base, i64 e, std::size_t K) {
  Dense r(K, 0);
  if (K > 0) r[0] = 1;
  while (e > 0) {
    if (e & 1) r = dense_mul(r, base, K);
    e >>= 1;
    if (e > 0) base = dense_mul(base, base, K);
  }
  return r;
}

// prod_{n >= 1} (1 - q^n) by the pentagonal number theorem.
Dense euler_function(std::size_t K) {
  Dense r(K, 0);
  if (K == 0) return r;
  r[0] = 1;
  for (i64 k = 1;; ++k) {
    i64 p1 = k * (3 * k - 1) / 2;
    i64 p2 = k * (3 * k + 1) / 2;
    if (static_cast<std::size_t>(p1) >= K) break;
    int sign = (k % 2 == 1) ? -1 : 1;
    r[p1] += sign;
    if (static_cast<std::size_t>(p2) < K) r[p2] += sign;
  }
  return r;
}

}  // namespace

QSeries QSeries::from_raw(i64 D, std::map<i64, Rat> coeffs, std::optional<Rat> trunc) {
  if (D < 1) throw std::invalid_argument("lattice denominator must be positive");
  QSeries f;
  f.D_ = D;
  f.trunc_ = std::move(trunc);
  i64 limit = f.trunc_ ? key_limit(*f.trunc_, D) : 0;
  for (auto& [k, c] : coeffs) {
    if (c == 0) continue;
    if (f.trunc_ && k >= limit) continue;
    f.coeffs_.emplace(k, std::move(c));
  }
  f.normalise();
  return f;
}

void QSeries::normalise() {
  i64 g = D_;
  for (const auto& [k, c] : coeffs_) g = gcd(g, k);
  if (g > 1) {
    std::map<i64, Rat> scaled;
    for (auto& [k, c] : coeffs_) scaled.emplace(k / g, c);
    coeffs_ = std::move(scaled);
    D_ /= g;
  }
}

QSeries QSeries::rescaled(i64 L) const {
  if (L % D_ != 0) throw std::invalid_argument("rescale to a non-multiple lattice");
  QSeries f;
  f.D_ = L;
  f.trunc_ = trunc_;
  const i64 s = L / D_;
  for (const auto& [k, c] : coeffs_) f.coeffs_.emplace(k * s, c);
  return f;
}

QSeries QSeries::zero(std::optional<Rat> trunc) { return from_raw(1, {}, std::move(trunc)); }

QSeries QSeries::one(std::optional<Rat> trunc) { return monomial(1, 0, std::move(trunc)); }

QSeries QSeries::monomial(const Rat& coeff, const Rat& exponent, std::optional<Rat> trunc) {
  Rat e = exponent;
  e.canonicalize();
  const i64 D = e.get_den().get_si();
  const i64 k = Int(e.get_num()).get_si();
  return from_raw(D, {{k, coeff}}, std::move(trunc));
}

QSeries QSeries::from_integer_terms(const std::map<i64, Rat>& terms, std::optional<Rat> trunc) {
  return from_raw(1, terms, std::move(trunc));
}

Rat QSeries::coeff(const Rat& exponent) const {
  if (trunc_ && exponent >= *trunc_) {
    throw std::out_of_range("coefficient at q^" + thompson::to_string(exponent) + " is beyond truncation " +
                            thompson::to_string(*trunc_));
  }
  Rat x = exponent * D_;
  if (!is_integer(x)) return 0;
  auto it = coeffs_.find(x.get_num().get_si());
  return it == coeffs_.end() ? Rat(0) : it->second;
}

std::vector<std::pair<Rat, Rat>> QSeries::terms() const {
  std::vector<std::pair<Rat, Rat>> out;
  for (const auto& [k, c] : coeffs_) out.emplace_back(make_rat(k, D_), c);
  return out;
}

std::optional<Rat> QSeries::valuation() const {
  if (coeffs_.empty()) return std::nullopt;
  return make_rat(coeffs_.begin()->first, D_);
}

QSeries QSeries::truncated(const Rat& t) const {
  Trunc nt = min_trunc(trunc_, t);
  std::map<i64, Rat> c = coeffs_;
  return from_raw(D_, std::move(c), nt);
}

QSeries& QSeries::operator+=(const QSeries& o) {
  const i64 L = lcm(D_, o.D_);
  QSeries a = rescaled(L), b = o.rescaled(L);
  for (const auto& [k, c] : b.coeffs_) a.coeffs_[k] += c;
  *this = from_raw(L, std::move(a.coeffs_), min_trunc(trunc_, o.trunc_));
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

QSeries& QSeries::operator*=(const Rat& s) {
  if (s == 0) {
    coeffs_.clear();
    D_ = 1;
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= s;
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& o) {
  auto val_or = [](const QSeries& f) -> Trunc {
    if (auto v = f.valuation()) return v;
    return f.trunc_;
  };
  Trunc t = min_trunc(add_trunc(trunc_, val_or(o)), add_trunc(o.trunc_, val_or(*this)));
  // A truncated factor times an exact zero is exactly zero.
  if ((is_zero() && is_exact()) || (o.is_zero() && o.is_exact())) t = std::nullopt;
  const i64 L = lcm(D_, o.D_);
  QSeries a = rescaled(L), b = o.rescaled(L);
  std::map<i64, Rat> prod;
  const bool bounded = t.has_value();
  const i64 limit = bounded ? key_limit(*t, L) : 0;
  for (const auto& [k1, c1] : a.coeffs_) {
    for (const auto& [k2, c2] : b.coeffs_) {
      if (bounded && k1 + k2 >= limit) break;
      prod[k1 + k2] += c1 * c2;
    }
  }
  *this = from_raw(L, std::move(prod), t);
  return *this;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.D_ == b.D_ && a.coeffs_ == b.coeffs_ && a.trunc_ == b.trunc_;
}

std::string QSeries::to_string(std::size_t max_terms) const {
  std::ostringstream out;
  std::size_t n = 0;
  for (const auto& [e, c] : terms()) {
    if (n++ == max_terms) {
      out << " + ...";
      break;
    }
    if (n > 1) out << " + ";
    out << "(" << thompson::to_string(c) << ")q^" << thompson::to_string(e);
  }
  if (n == 0) out << "0";
  if (trunc_) out << " + O(q^" << thompson::to_string(*trunc_) << ")";
  return out.str();
}

QSeries scalar_mul(const QSeries& f, const Rat& s) { return f * s; }

QSeries invert(const QSeries& f, std::optional<Rat> default_trunc) {
  auto v = f.valuation();
  if (!v) throw std::domain_error("inverting the zero series");
  const i64 D = f.denom();
  const auto& raw = f.raw();
  const i64 k0 = raw.begin()->first;
  const Rat c0 = raw.begin()->second;
  if (raw.size() == 1 && f.is_exact()) {
    return QSeries::from_raw(D, {{-k0, 1 / c0}}, std::nullopt);
  }
  Rat t;
  if (f.trunc_order()) {
    t = *f.trunc_order() - 2 * *v;
    if (default_trunc && *default_trunc < t) t = *default_trunc;
  } else {
    if (!default_trunc) throw std::invalid_argument("inverse of an exact polynomial needs a truncation order");
    t = *default_trunc;
  }
  // f = c0 q^v (1 + h); (1+h)^(-1) by the usual recurrence on lattice points.
  const i64 K = std::max<i64>(0, key_limit(t + *v, D));
  std::vector<std::pair<i64, Rat>> h;
  for (const auto& [k, c] : raw) {
    if (k == k0) continue;
    if (k - k0 >= K) break;
    h.emplace_back(k - k0, c / c0);
  }
  std::vector<Rat> b(static_cast<std::size_t>(K), Rat(0));
  if (K > 0) b[0] = 1;
  for (i64 k = 1; k < K; ++k) {
    Rat s = 0;
    for (const auto& [j, c] : h) {
      if (j > k) break;
      if (b[k - j] != 0) s += c * b[k - j];
    }
    b[k] = -s;
  }
  std::map<i64, Rat> out;
  for (i64 k = 0; k < K; ++k) {
    if (b[k] != 0) out.emplace(k - k0, b[k] / c0);
  }
  return QSeries::from_raw(D, std::move(out), t);
}

QSeries pow(const QSeries& f, i64 k) {
  if (k < 0) return pow(invert(f), -k);
  QSeries r = QSeries::one();
  QSeries base = f;
  while (k > 0) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return r;
}

QSeries log1p_series(const QSeries& g) {
  if (g.is_zero()) return QSeries::zero(g.trunc_order());
  Rat v = *g.valuation();
  if (v <= 0) throw std::domain_error("log1p needs a series with positive valuation");
  if (g.is_exact()) throw std::invalid_argument("log1p of an exact series needs a truncation order");
  const Rat& t = *g.trunc_order();
  QSeries result = QSeries::zero(t);
  QSeries power = g;
  for (i64 k = 1; k * v < t; ++k) {
    Rat coeff = make_rat(k % 2 == 1 ? 1 : -1, k);
    result += power * coeff;
    power *= g;
  }
  return result;
}

QSeries exp_series(const QSeries& g) {
  if (g.is_zero()) return QSeries::one(g.trunc_order());
  Rat v = *g.valuation();
  if (v <= 0) throw std::domain_error("exp needs a series with positive valuation");
  if (g.is_exact()) throw std::invalid_argument("exp of an exact series needs a truncation order");
  const Rat& t = *g.trunc_order();
  QSeries result = QSeries::one(t);
  QSeries power = g;
  Rat fact = 1;
  for (i64 k = 1; k * v < t; ++k) {
    fact *= k;
    result += power * Rat(1 / fact);
    power *= g;
  }
  return result;
}

QSeries substitute_quarter(const QSeries& f) { return QSeries::from_raw(4 * f.denom(), f.raw(), f.trunc_order() ? std::optional<Rat>(*f.trunc_order() / 4) : std::nullopt); }

QSeries substitute_scale(const QSeries& f, i64 s) {
  if (s < 1) throw std::invalid_argument("scale must be positive");
  std::map<i64, Rat> c;
  for (const auto& [k, v] : f.raw()) c.emplace(k * s, v);
  return QSeries::from_raw(f.denom(), std::move(c),
                           f.trunc_order() ? std::optional<Rat>(*f.trunc_order() * s) : std::nullopt);
}

Rat EtaQuotient::weight() const {
  i64 s = 0;
  for (const auto& [d, r] : factors) s += r;
  return make_rat(s, 2);
}

Rat EtaQuotient::leading_exponent() const {
  i64 s = 0;
  for (const auto& [d, r] : factors) s += d * r;
  return make_rat(s, 24);
}

EtaQuotient EtaQuotient::parse(const std::string& text) {
  EtaQuotient eq;
  auto parse_side = [&](const std::string& side, int sign) {
    std::stringstream ss(side);
    std::string item;
    while (std::getline(ss, item, '.')) {
      if (item.empty()) continue;
      auto caret = item.find('^');
      i64 delta = std::stoll(item.substr(0, caret));
      i64 r = caret == std::string::npos ? 1 : std::stoll(item.substr(caret + 1));
      if (delta < 1) throw std::invalid_argument("eta quotient needs delta >= 1: " + text);
      eq.factors.emplace_back(delta, sign * r);
    }
  };
  auto slash = text.find('/');
  try {
    parse_side(text.substr(0, slash), 1);
    if (slash != std::string::npos) parse_side(text.substr(slash + 1), -1);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad eta quotient: " + text);
  }
  return eq;
}

std::string EtaQuotient::to_string() const {
  std::string num, den;
  for (const auto& [d, r] : factors) {
    std::string& side = r > 0 ? num : den;
    if (!side.empty()) side += ".";
    side += std::to_string(d) + "^" + std::to_string(r > 0 ? r : -r);
  }
  return den.empty() ? num : num + "/" + den;
}

QSeries eta_expansion(const EtaQuotient& eq, const Rat& order) {
  const Rat v0 = eq.leading_exponent();
  const i64 K = std::max<i64>(0, key_limit(order - v0, 1));
  const std::size_t Ks = static_cast<std::size_t>(K);
  Dense euler = euler_function(Ks);
  Dense prod(Ks, 0);
  if (Ks > 0) prod[0] = 1;
  for (const auto& [delta, r] : eq.factors) {
    if (r == 0) continue;
    Dense e(Ks, 0);
    for (std::size_t i = 0; i * delta < Ks; ++i) e[i * delta] = euler[i];
    if (r < 0) e = dense_inv(e, Ks);
    prod = dense_mul(prod, dense_pow(e, r < 0 ? -r : r, Ks), Ks);
  }
  const i64 shift = Int(v0 * 24).get_si();
  std::map<i64, Rat> c;
  for (i64 j = 0; j < K; ++j) {
    if (prod[j] != 0) c.emplace(shift + 24 * j, Rat(prod[j]));
  }
  return QSeries::from_raw(24, std::move(c), order);
}

QSeries theta_series(i64 m, const Rat& order) {
  if (m < 1) throw std::invalid_argument("theta_series needs m >= 1");
  std::map<i64, Rat> c;
  for (i64 n = 0; Rat(m * m * n * n) < order; ++n) c.emplace(m * m * n * n, Rat(n == 0 ? 1 : 2));
  return QSeries::from_raw(1, std::move(c), order);
}

i64 theta_coefficient(i64 m, i64 n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  const i64 m2 = m * m;
  if (n % m2 != 0) return 0;
  const i64 k = n / m2;
  return mpz_perfect_square_p(Int(k).get_mpz_t()) ? 2 : 0;
}

i64 gamma0_index(i64 N) {
  if (N < 1) throw std::invalid_argument("level must be positive");
  Rat idx = N;
  for (const auto& [p, e] : factor_trial(N)) idx *= Rat(p + 1, p);
  return idx.get_num().get_si();
}

i64 sturm_bound(i64 two_k, i64 N) {
  if (two_k < 2 || two_k % 2 != 0) throw std::invalid_argument("Sturm bound needs an even weight numerator >= 2");
  Rat b = make_rat(two_k * gamma0_index(N), 12);
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return c.get_si();
}

}  // namespace thompson

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thompson/arith.hpp"
#include "thompson/numerics.hpp"

namespace thompson {

// Formal Laurent series sum_k c_k q^(k/D) with exact rational coefficients.
// Coefficients are known for exponents < trunc_order; an absent trunc_order
// means the series is exact (a Laurent polynomial).
class QSeries {
 public:
  QSeries() = default;
  static QSeries zero(std::optional<Rat> trunc = std::nullopt);
  static QSeries one(std::optional<Rat> trunc = std::nullopt);
  static QSeries monomial(const Rat& coeff, const Rat& exponent, std::optional<Rat> trunc = std::nullopt);
  // Integer exponents; terms at or beyond trunc are dropped.
  static QSeries from_integer_terms(const std::map<i64, Rat>& terms, std::optional<Rat> trunc);

  i64 denom() const { return D_; }
  const std::map<i64, Rat>& raw() const { return coeffs_; }
  const std::optional<Rat>& trunc_order() const { return trunc_; }
  bool is_exact() const { return !trunc_.has_value(); }

  Rat coeff(const Rat& exponent) const;
  Rat coeff(i64 exponent) const { return coeff(Rat(exponent)); }
  // Stored (nonzero) terms as (exponent, coefficient).
  std::vector<std::pair<Rat, Rat>> terms() const;
  // Minimal exponent with a nonzero coefficient; nullopt for the zero series.
  std::optional<Rat> valuation() const;
  bool is_zero() const { return coeffs_.empty(); }

  // Restrict to exponents < t (t may only lower the truncation order).
  QSeries truncated(const Rat& t) const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const QSeries& o);
  QSeries& operator*=(const Rat& s);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const QSeries& b) { return a *= b; }
  friend QSeries operator*(QSeries a, const Rat& s) { return a *= s; }
  friend QSeries operator*(const Rat& s, QSeries a) { return a *= s; }
  QSeries operator-() const;

  // Exact equality of lattice-independent content and truncation.
  friend bool operator==(const QSeries& a, const QSeries& b);

  std::string to_string(std::size_t max_terms = 12) const;

  // Used by the free functions below; not part of the public contract.
  static QSeries from_raw(i64 D, std::map<i64, Rat> coeffs, std::optional<Rat> trunc);
  QSeries rescaled(i64 D) const;

 private:
  void normalise();

  i64 D_ = 1;
  std::map<i64, Rat> coeffs_;
  std::optional<Rat> trunc_;
};

QSeries scalar_mul(const QSeries& f, const Rat& s);
QSeries pow(const QSeries& f, i64 k);
// Requires a nonzero leading coefficient; an exact series with more than one
// term gets an inverse truncated at `default_trunc` (relative to its valuation).
QSeries invert(const QSeries& f, std::optional<Rat> default_trunc = std::nullopt);
QSeries log1p_series(const QSeries& g);
// Formal exponential of a series with positive valuation.
QSeries exp_series(const QSeries& g);
// Exponent map k/D -> k/(4D), i.e. tau -> tau/4.
QSeries substitute_quarter(const QSeries& f);
// Exponent map e -> s*e, i.e. tau -> s*tau.
QSeries substitute_scale(const QSeries& f, i64 s);

struct EtaQuotient {
  std::vector<std::pair<i64, i64>> factors;  // (delta, r_delta)

  Rat weight() const;                // (1/2) sum r
  Rat leading_exponent() const;      // sum delta r / 24
  // "1^8/4^8", "2^3.3^9/1^3.6^9": factors separated by '.', '/' splits
  // numerator and denominator; exponent defaults to 1.
  static EtaQuotient parse(const std::string& text);
  std::string to_string() const;
};

// prod_delta eta(delta tau)^r_delta with exponents < order.
QSeries eta_expansion(const EtaQuotient& eq, const Rat& order);
// sum_{n in Z} q^(m^2 n^2) with exponents < order.
QSeries theta_series(i64 m, const Rat& order);
// Coefficient of q^n in theta(m^2 tau).
i64 theta_coefficient(i64 m, i64 n);

// ceil((k/6) N prod_{p | N}(1 + 1/p)) for weight k = two_k / 2.
i64 sturm_bound(i64 two_k, i64 N);
// Index of Gamma_0(N) in SL_2(Z).
i64 gamma0_index(i64 N);

}  // namespace thompson

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thompson/qseries.hpp"

namespace thompson {

// H_{m,n} for 1 <= m, n <= M, defined by
// log(f(t1) - f(t2)) = log(q1^-1 - q2^-1) - sum H_{m,n} q1^m q2^n.
class BivariateSeries {
 public:
  explicit BivariateSeries(int M) : M_(M), h_(static_cast<std::size_t>(M * M), Rat(0)) {}
  int cutoff() const { return M_; }
  Rat& at(int m, int n) { return h_[idx(m, n)]; }
  const Rat& at(int m, int n) const { return h_[idx(m, n)]; }
  bool symmetric() const;

 private:
  std::size_t idx(int m, int n) const;
  int M_;
  std::vector<Rat> h_;
};

// f must be q^-1 + sum_{n >= 0} a_n q^n with coefficients known below q^M.
BivariateSeries h_table(const QSeries& f, int M);

struct ReplicabilityReport {
  std::size_t compared = 0;
  std::vector<std::array<int, 4>> violations;  // (a, b, c, d) with H_ab != H_cd
  bool ok() const { return violations.empty(); }
};

// Compares H_{a,b} with H_{c,d} whenever ab = cd <= M and gcd(a,b) = gcd(c,d).
ReplicabilityReport is_replicable(const BivariateSeries& H);

// F0: exponents = 0 mod 4; F1: -3 and exponents = 1 mod 4.
std::pair<QSeries, QSeries> split_series(const QSeries& F);

// sum_{n in Z} q^((n + 1/2)^2) below `order`.
QSeries theta_half(const Rat& order);
// T^(j)(tau/4) / theta^(j)(tau).
QSeries t_series(const QSeries& F, int j);

// Laurent polynomial in x as (coefficient, power) pairs.
using XPoly = std::vector<std::pair<Rat, i64>>;

struct ReplIdentity {
  std::string label;      // series label, e.g. "3B"
  std::string component;  // "t0", "t1" or "t"
  std::string generator;  // eta quotient, or "0" for a constant, or "sum" for t0 + t1
  XPoly numerator;
  XPoly denominator;  // empty means 1
  std::string source;
};

std::vector<ReplIdentity> load_identities(const std::string& path);
std::vector<ReplIdentity> shipped_identities();

// The identity's right-hand side as a q-series with exponents < order.
QSeries evaluate_identity(const ReplIdentity& id, i64 order);

struct IdentityCheck {
  ReplIdentity id;
  bool ok = false;
  i64 checked_to = -1;  // largest exponent compared
  std::optional<i64> first_mismatch;
  std::string expected, got;  // at first_mismatch
};

// Compares the t-series of F with the identity for exponents <= order.
// For "sum" rows the two component identities must be supplied.
IdentityCheck verify_identity(const ReplIdentity& id, const QSeries& F, i64 order,
                              const std::vector<ReplIdentity>& components = {});

}  // namespace thompson

#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace thompson {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Least non-negative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(a) * b % m);
}

i64 powmod(i64 a, i64 e, i64 m);
i64 gcd(i64 a, i64 b);
// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);

// Kronecker symbol (c/d) for arbitrary integers.
int kronecker(i64 c, i64 d);
// Legendre symbol for an odd prime p.
int legendre(i64 a, i64 p);

// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
i64 sqrt_mod_prime(i64 a, i64 p);

using Factorization = std::vector<std::pair<i64, int>>;

// Smallest-prime-factor sieve shared between calls. Grows on demand and is
// safe to read concurrently once obtained.
class PrimeSieve {
 public:
  explicit PrimeSieve(i64 limit);
  i64 limit() const { return static_cast<i64>(spf_.size()) - 1; }
  Factorization factor(i64 n) const;

 private:
  std::vector<std::uint32_t> spf_;
};

std::shared_ptr<const PrimeSieve> shared_sieve(i64 limit);

// Trial-division factorisation, for arguments beyond any sieve.
Factorization factor_trial(i64 n);
// Product of two coprime-or-not factorisations (exponents are added).
Factorization merge(const Factorization& a, const Factorization& b);

}  // namespace thompson

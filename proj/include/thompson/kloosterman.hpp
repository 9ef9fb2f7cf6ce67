#pragma once

#include <cstdint>
#include <optional>

#include "thompson/arith.hpp"
#include "thompson/bigreal.hpp"

namespace thompson {

// Multiplier psi(c, d) = exp(-2 pi i v c d / (N h)) on Gamma_0(4N).
struct MultiplierParams {
  i64 N = 1;
  i64 v = 0;
  i64 h = 1;

  // Requires N >= 1, h >= 1, 0 <= v < h and h | gcd(4N, 96).
  void validate() const;
  bool trivial() const { return v == 0; }
};

// eps_d = 1 for d = 1 mod 4, i for d = 3 mod 4. Throws on even d.
BigComplex epsilon(i64 d, int prec = kDefaultPrecision);

BigComplex psi_value(const MultiplierParams& params, i64 c, i64 d, int prec = kDefaultPrecision);

// Direct O(c) evaluation of
//   K_psi(m, n, c) = sum_{d mod c, (d,c)=1} conj(psi(c,d)) (c/d) eps_d e((m dbar + n d)/c)
// for c = 0 mod 4 (and c = 0 mod 4N when a multiplier is given).
// This is the reference implementation.
BigComplex kloosterman_sum(i64 m, i64 n, i64 c, const std::optional<MultiplierParams>& params,
                           int prec = kDefaultPrecision);

// The multiplier is a character in d, so K_psi(m, n, c) = K(m, n', c) with
// n' = n - v c^2 / (N h). Returns that shifted n reduced mod c.
i64 shifted_n(const MultiplierParams& params, i64 n, i64 c);

// Trivial-multiplier sum evaluated through the CRT factorisation of c:
// a 2-adic factor and Salie/Kloosterman factors at the odd prime powers.
// Roughly polylogarithmic in c instead of linear.
template <class R>
Complex<R> kloosterman_factored(i64 m, i64 n, i64 c, const Factorization& fc, int prec);

BigComplex kloosterman_factored(i64 m, i64 n, i64 c, int prec = kDefaultPrecision);
DComplex kloosterman_factored_double(i64 m, i64 n, i64 c);

// True when K(m, n, c) vanishes identically (trivial multiplier): 16 | c with
// m != n (mod 4), or 8 || c with m = n + 2 (mod 4). For 8 || c and m - n odd
// the sum is in general nonzero, e.g. K(0, 1, 8) = 4 e(1/8).
bool vanishing_predicate(i64 m, i64 n, i64 c);

}  // namespace thompson

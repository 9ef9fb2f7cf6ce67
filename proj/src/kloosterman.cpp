#include "thompson/kloosterman.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace thompson {

void MultiplierParams::validate() const {
  if (N < 1 || h < 1) throw std::invalid_argument("multiplier needs N >= 1 and h >= 1");
  if (v < 0 || v >= h) throw std::invalid_argument("multiplier needs 0 <= v < h");
  if (gcd(4 * N, 96) % h != 0) {
    throw std::invalid_argument("h = " + std::to_string(h) + " does not divide gcd(4N, 96) for N = " +
                                std::to_string(N));
  }
}

BigComplex epsilon(i64 d, int prec) {
  if (d % 2 == 0) throw std::invalid_argument("epsilon of even d");
  if (mod(d, 4) == 1) return {BigReal(1L, prec), BigReal(prec)};
  return {BigReal(prec), BigReal(1L, prec)};
}

BigComplex psi_value(const MultiplierParams& params, i64 c, i64 d, int prec) {
  const i64 q = params.N * params.h;
  i64 k = mulmod(mulmod(mod(params.v, q), mod(c, q), q), mod(d, q), q);
  return RealOps<BigReal>::unit_root(mod(-k, q), q, prec);
}

i64 shifted_n(const MultiplierParams& params, i64 n, i64 c) {
  const __int128 num = static_cast<__int128>(params.v) * c * c;
  const i64 q = params.N * params.h;
  if (num % q != 0) throw std::invalid_argument("modulus not compatible with multiplier");
  i64 shift = static_cast<i64>((num / q) % c);
  return mod(mod(n, c) - shift, c);
}

namespace {

// Sum of e(k/L) over a histogram of exponents k.
template <class R>
Complex<R> sum_histogram(const std::map<i64, i64>& hist, i64 L, int prec) {
  Complex<R> acc{RealOps<R>::from_int(0, prec), RealOps<R>::from_int(0, prec)};
  for (const auto& [k, count] : hist) {
    if (count == 0) continue;
    Complex<R> z = RealOps<R>::unit_root(k, L, prec);
    R w = RealOps<R>::from_int(count, prec);
    acc += z * w;
  }
  return acc;
}

}  // namespace

BigComplex kloosterman_sum(i64 m, i64 n, i64 c, const std::optional<MultiplierParams>& params,
                           int prec) {
  if (c <= 0 || c % 4 != 0) throw std::invalid_argument("Kloosterman modulus must be a positive multiple of 4");
  i64 L = c;
  if (params) {
    params->validate();
    if (c % (4 * params->N) != 0) throw std::invalid_argument("modulus must be a multiple of 4N");
    const i64 q = params->N * params->h;
    L = c / gcd(c, q) * q;
  }
  const i64 per_c = L / c;
  std::map<i64, i64> hist;
  for (i64 d = 1; d < c; d += 2) {
    if (gcd(d, c) != 1) continue;
    const i64 dbar = invmod(d, c);
    i64 k = mod(mulmod(mod(m, c), dbar, c) + mulmod(mod(n, c), d, c), c) * per_c;
    if (d % 4 == 3) k += L / 4;
    if (kronecker(c, d) < 0) k += L / 2;
    if (params && params->v != 0) {
      const i64 q = params->N * params->h;
      i64 t = mulmod(mulmod(mod(params->v, q), mod(c, q), q), mod(d, q), q);
      k -= t * (L / q);
    }
    hist[mod(k, L)] += 1;
  }
  return sum_histogram<BigReal>(hist, L, prec);
}

bool vanishing_predicate(i64 m, i64 n, i64 c) {
  if (c % 8 != 0) return false;
  const i64 r = mod(m - n, 4);
  if (c % 16 == 0) return r != 0;
  // 2-adic part exactly 8: only the m = n + 2 (mod 4) half vanishes.
  return r == 2;
}

namespace {

// Quarter turns of (2^l/d) eps_d chi_{-4}(d)^twist for odd d, l >= 2.
int two_adic_quarter(i64 d, int l, bool twist) {
  int q = 0;
  if ((l & 1) && (mod(d, 8) == 3 || mod(d, 8) == 5)) q += 2;
  if (mod(d, 4) == 3) q += twist ? 3 : 1;  // eps_d * chi_{-4}(d) = conj(eps_d)
  return q & 3;
}

// sum over odd d mod 2^l of (2^l/d) eps_d [chi_{-4}(d)] e((a dbar + b d)/2^l).
template <class R>
Complex<R> two_adic_sum(i64 a, i64 b, int l, bool twist, int prec) {
  const i64 M = i64{1} << l;
  a = mod(a, M);
  b = mod(b, M);
  std::map<i64, i64> hist;
  if (l < 6) {
    for (i64 d = 1; d < M; d += 2) {
      i64 k = mulmod(a, invmod(d, M), M) + mulmod(b, d, M) + two_adic_quarter(d, l, twist) * (M / 4);
      hist[mod(k, M)] += 1;
    }
    return sum_histogram<R>(hist, M, prec);
  }
  // d = x (1 + 2^h t): the character is constant on the coset and the t-sum
  // vanishes unless b x = a xbar (mod 2^(l-h)).
  const int h = (l + 1) / 2;
  const i64 H = i64{1} << h;
  const i64 rest = i64{1} << (l - h);
  for (i64 x = 1; x < H; x += 2) {
    const i64 xbar = invmod(x, M);
    if (mod(mulmod(b, x, M) - mulmod(a, xbar, M), rest) != 0) continue;
    i64 k = mulmod(a, xbar, M) + mulmod(b, x, M) + two_adic_quarter(x, l, twist) * (M / 4);
    hist[mod(k, M)] += rest;
  }
  return sum_histogram<R>(hist, M, prec);
}

template <class R>
Complex<R> gauss_sum(i64 p, int prec) {
  R s = RealOps<R>::sqrt(RealOps<R>::from_int(p, prec));
  if (p % 4 == 1) return {s, RealOps<R>::from_int(0, prec)};
  return {RealOps<R>::from_int(0, prec), s};
}

// sum over d mod p^k, p odd, (d,p)=1 of (d/p)^tw e((a dbar + b d)/p^k).
template <class R>
Complex<R> odd_prime_power_sum(i64 a, i64 b, i64 p, int k, bool tw, int prec) {
  i64 q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  a = mod(a, q);
  b = mod(b, q);
  const bool pa = a % p == 0, pb = b % p == 0;
  const R zero = RealOps<R>::from_int(0, prec);
  if (pa && pb) {
    if (k == 1) return {RealOps<R>::from_int(tw ? 0 : p - 1, prec), zero};
    Complex<R> inner = odd_prime_power_sum<R>(a / p, b / p, p, k - 1, tw, prec);
    return inner * RealOps<R>::from_int(p, prec);
  }
  if (pa != pb) {
    if (k >= 2) return {zero, zero};
    if (!tw) return {RealOps<R>::from_int(-1, prec), zero};
    const int chi = legendre(pa ? b : a, p);
    return gauss_sum<R>(p, prec) * RealOps<R>::from_int(chi, prec);
  }
  if (k == 1 && tw) {
    // Salie sum: (b/p) g_p sum_{y^2 = ab} e(2y/p).
    const i64 ab = mulmod(a, b, p);
    if (legendre(ab, p) != 1) return {zero, zero};
    const i64 y = sqrt_mod_prime(ab, p);
    Complex<R> s = RealOps<R>::unit_root(mod(2 * y, p), p, prec);
    s += RealOps<R>::unit_root(mod(-2 * y, p), p, prec);
    return s * gauss_sum<R>(p, prec) * RealOps<R>::from_int(legendre(b, p), prec);
  }
  std::map<i64, i64> hist;
  if (k == 1) {
    for (i64 d = 1; d < p; ++d) {
      hist[mod(mulmod(a, invmod(d, p), p) + mulmod(b, d, p), p)] += 1;
    }
    return sum_histogram<R>(hist, p, prec);
  }
  // Stationary phase as in the 2-adic case, d = x (1 + p^h t).
  const int h = (k + 1) / 2;
  i64 H = 1;
  for (int i = 0; i < h; ++i) H *= p;
  const i64 rest = q / H;
  std::map<i64, i64> plus, minus;
  for (i64 x = 1; x < H; ++x) {
    if (x % p == 0) continue;
    const i64 xbar = invmod(x, q);
    if (mod(mulmod(b, x, q) - mulmod(a, xbar, q), rest) != 0) continue;
    const i64 k2 = mod(mulmod(a, xbar, q) + mulmod(b, x, q), q);
    if (tw && legendre(x, p) < 0) {
      minus[k2] += rest;
    } else {
      plus[k2] += rest;
    }
  }
  for (auto& [key, cnt] : minus) plus[key] -= cnt;
  return sum_histogram<R>(plus, q, prec);
}

}  // namespace

template <class R>
Complex<R> kloosterman_factored(i64 m, i64 n, i64 c, const Factorization& fc, int prec) {
  if (c <= 0 || c % 4 != 0) throw std::invalid_argument("Kloosterman modulus must be a positive multiple of 4");
  int l = 0;
  i64 codd = c;
  while (codd % 2 == 0) {
    codd /= 2;
    ++l;
  }
  const i64 M2 = i64{1} << l;
  const i64 cinv2 = invmod(codd, M2);
  Complex<R> result = two_adic_sum<R>(mulmod(mod(m, M2), cinv2, M2), mulmod(mod(n, M2), cinv2, M2), l,
                                      codd % 4 == 3, prec);
  if (codd == 1) return result;
  const i64 u = invmod(M2 % codd, codd);
  const i64 a2 = mulmod(mod(m, codd), u, codd);
  const i64 b2 = mulmod(mod(n, codd), u, codd);
  for (const auto& [p, k] : fc) {
    if (p == 2) continue;
    i64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    const i64 s = codd / q;
    const i64 sinv = invmod(s % q, q);
    result *= odd_prime_power_sum<R>(mulmod(a2 % q, sinv, q), mulmod(b2 % q, sinv, q), p, k, k % 2 == 1, prec);
  }
  return result;
}

template Complex<double> kloosterman_factored<double>(i64, i64, i64, const Factorization&, int);
template Complex<BigReal> kloosterman_factored<BigReal>(i64, i64, i64, const Factorization&, int);

BigComplex kloosterman_factored(i64 m, i64 n, i64 c, int prec) {
  return kloosterman_factored<BigReal>(m, n, c, factor_trial(c), prec);
}

DComplex kloosterman_factored_double(i64 m, i64 n, i64 c) {
  return kloosterman_factored<double>(m, n, c, factor_trial(c), 53);
}

}  // namespace thompson

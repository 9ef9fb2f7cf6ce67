#include "thompson/arith.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace thompson {

i64 powmod(i64 a, i64 e, i64 m) {
  i64 r = 1 % m;
  a = mod(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 gcd(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 invmod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("not invertible");
  return mod(old_s, m);
}

int kronecker(i64 c, i64 d) {
  if (d == 0) return (c == 1 || c == -1) ? 1 : 0;
  int result = 1;
  if (d < 0) {
    d = -d;
    if (c < 0) result = -result;
  }
  int twos = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((c & 1) == 0) return 0;
    i64 r8 = mod(c, 8);
    if ((twos & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // Jacobi symbol (c/d) with d odd positive.
  i64 a = mod(c, d);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 r = d % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, d);
    if (a % 4 == 3 && d % 4 == 3) result = -result;
    a %= d;
  }
  return d == 1 ? result : 0;
}

int legendre(i64 a, i64 p) { return kronecker(a, p); }

i64 sqrt_mod_prime(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) throw std::domain_error("not a quadratic residue");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  i64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  i64 z = 2;
  while (legendre(z, p) != -1) ++z;
  i64 m = s;
  i64 c = powmod(z, q, p);
  i64 t = powmod(a, q, p);
  i64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    i64 i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    i64 b = c;
    for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

PrimeSieve::PrimeSieve(i64 limit) : spf_(static_cast<size_t>(std::max<i64>(limit, 2)) + 1, 0) {
  const i64 n = static_cast<i64>(spf_.size()) - 1;
  for (i64 i = 2; i <= n; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    if (i <= n / i) {
      for (i64 j = i * i; j <= n; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }
}

Factorization PrimeSieve::factor(i64 n) const {
  if (n < 1) throw std::invalid_argument("factor of non-positive integer");
  if (n > limit()) return factor_trial(n);
  Factorization f;
  while (n > 1) {
    i64 p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  return f;
}

std::shared_ptr<const PrimeSieve> shared_sieve(i64 limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeSieve> current;
  std::lock_guard<std::mutex> lock(mu);
  if (!current || current->limit() < limit) {
    current = std::make_shared<const PrimeSieve>(std::max<i64>(limit, 1 << 16));
  }
  return current;
}

Factorization factor_trial(i64 n) {
  if (n < 1) throw std::invalid_argument("factor of non-positive integer");
  Factorization f;
  for (i64 p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

Factorization merge(const Factorization& a, const Factorization& b) {
  std::map<i64, int> m;
  for (const auto& [p, e] : a) m[p] += e;
  for (const auto& [p, e] : b) m[p] += e;
  return {m.begin(), m.end()};
}

}  // namespace thompson

#include "thompson/positivity.hpp"

#include <omp.h>

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "thompson/pipeline.hpp"

namespace thompson {

void BoundInputs::validate() const {
  if (N < 1 || h_hat < 1 || n < 1) throw std::invalid_argument("bound inputs need N, h_hat, n >= 1");
  if (std::gcd(N, i64(24)) % h_hat != 0) {
    throw std::invalid_argument("h_hat = " + std::to_string(h_hat) + " does not divide gcd(N, 24) for N = " +
                                std::to_string(N));
  }
  const i64 r = mod(v_hat, h_hat);
  if (h_hat > 1 && r != 1 && r != h_hat - 1) {
    throw std::invalid_argument("v_hat = " + std::to_string(v_hat) + " is not +-1 mod " + std::to_string(h_hat));
  }
}

BoundInputs BoundInputs::from_class(const ClassRecord& cls, i64 n) {
  const i64 g = std::gcd(cls.h, i64(4));
  BoundInputs in;
  in.N = cls.order;
  in.h_hat = cls.h / g;
  in.v_hat = mod(4 * cls.v / g, in.h_hat);
  in.n = n;
  in.validate();
  return in;
}

namespace {

// zeta(5/2) per working precision; MPFR's zeta is far slower than the rest of a bound.
const BigReal& zeta_5_2(int prec) {
  static std::mutex mu;
  static std::map<int, BigReal> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(prec);
  if (it == memo.end()) {
    BigReal z = BigReal::zeta(BigReal(2.5, 2 * prec));
    BigReal r(prec);
    mpfr_set(r.get(), z.get(), MPFR_RNDN);
    it = memo.emplace(prec, std::move(r)).first;
  }
  return it->second;
}

void check_positive(i64 n) {
  if (n < 1) throw std::invalid_argument("bounds need n >= 1");
}

BigReal quarter_root_3n(i64 n, int prec) { return pow(BigReal(3 * n, prec), 0.25); }

// pi sqrt(3n) / N
BigReal bessel_arg(i64 N, i64 n, int prec) {
  return BigReal::pi(prec) * sqrt(BigReal(3 * n, prec)) / BigReal(N, prec);
}

// |F| = 2 pi sqrt2 (3/n)^(1/4) |C| + theta part
BigReal F_scale(i64 n, int prec) {
  return BigReal(2L, prec) * BigReal::pi(prec) * sqrt(BigReal(2L, prec)) *
         pow(BigReal(Rat(3, n), prec), 0.25);
}

std::vector<i64> prime_divisors(i64 x) {
  std::vector<i64> out;
  for (i64 p = 2; p * p <= x; ++p) {
    if (x % p) continue;
    out.push_back(p);
    while (x % p == 0) x /= p;
  }
  if (x > 1) out.push_back(x);
  return out;
}

}  // namespace

BigReal bound_D(i64 N, i64 n, int prec) {
  check_positive(n);
  return BigReal(2L, prec) * sqrt(BigReal(N, prec)) / (BigReal::pi(prec) * quarter_root_3n(n, prec)) *
         exp(bessel_arg(N, n, prec));
}

BigReal exact_D_1A(i64 n, int prec) {
  check_positive(n);
  BigReal d = bessel_I_half(bessel_arg(1, n, prec)) - sqrt(BigReal(2L, prec)) * quarter_root_3n(n, prec);
  return (n % 2) ? -d : d;
}

BigReal bound_R(i64 N, i64 n, int prec) {
  check_positive(n);
  const BigReal pi = BigReal::pi(prec);
  const BigReal Nb(N, prec);
  const BigReal mid = sqrt(BigReal(3 * n, prec) * pi) / Nb * exp(bessel_arg(N, n, prec) * 0.5);
  const BigReal tail = BigReal(2L, prec) * pi * pi * pow(BigReal(3 * n, prec), 1.25) /
                       (BigReal(5L, prec) * pow(Nb, 2.5)) * zeta_5_2(prec);
  return mid + tail;
}

BigReal bound_zeta(const BoundInputs& in, int prec) {
  in.validate();
  if (in.n < 40) throw std::invalid_argument("the zeta bound needs n >= 40, got " + std::to_string(in.n));
  const BigReal D(-in.D(), prec);
  BigReal euler(1L, prec);
  for (i64 p : prime_divisors(4 * in.N * in.h_hat)) euler *= BigReal(1L, prec) + BigReal(Rat(1, p), prec);
  const BigReal logD = log(D);
  const BigReal front = euler * 0.25 * (BigReal(1L, prec) + BigReal(2.13, prec) * pow(D, 0.125) * logD);
  BigReal poly(prec);
  if (in.N == 2) {
    poly = BigReal(3872L, prec) * D + BigReal(213L, prec) * pow(D, 1.5);
  } else {
    const BigReal N(in.N, prec), h(in.h_hat, prec);
    auto term = [&](const char* c, double a, double b) { return BigReal(c, prec) * pow(N, a) * pow(h, b); };
    const BigReal lin = term("6.124", 35.0 / 6, 47.0 / 6) - term("3.09", 23.0 / 4, 31.0 / 4) +
                        term("64.32", 29.0 / 6, 7) - term("23", 19.0 / 4, 7);
    const BigReal cub = term("0.146", 47.0 / 6, 65.0 / 6) - term("0.114", 31.0 / 4, 43.0 / 4) +
                        term("2.51", 35.0 / 6, 10) - term("0.74", 23.0 / 4, 10);
    poly = lin * D + cub * pow(D, 1.5);
  }
  return front * poly;
}

BigReal bound_C(const ClassRecord& cls, i64 n, int prec) {
  const BigReal z = bound_zeta(BoundInputs::from_class(cls, n), prec);
  return bound_D(cls.order, n, prec) + bound_R(cls.order, n, prec) +
         sqrt(BigReal(8L, prec)) * quarter_root_3n(n, prec) * z;
}

Rat theta_bound(const ClassRecord& cls, i64 n) {
  Rat s = 0;
  for (const auto& t : cls.kappas) {
    const i64 m2 = t.m * t.m;
    if (n == 0) {
      s += abs(t.kappa);
      continue;
    }
    if (n % m2) continue;
    const i64 k2 = n / m2;
    const i64 k = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(k2))));
    if (k * k == k2) s += 2 * abs(t.kappa);
  }
  return s;
}

BigReal bound_F(const ClassRecord& cls, i64 n, int prec) {
  return F_scale(n, prec) * bound_C(cls, n, prec) + BigReal(theta_bound(cls, n), prec);
}

BigReal lower_F_1A(i64 n, int prec) {
  const ClassRecord& cls = class_record("1A");
  const BigReal z = bound_zeta(BoundInputs::from_class(cls, n), prec);
  const BigReal c = abs(exact_D_1A(n, prec)) - bound_R(1, n, prec) -
                    sqrt(BigReal(8L, prec)) * quarter_root_3n(n, prec) * z;
  return F_scale(n, prec) * c - BigReal(theta_bound(cls, n), prec);
}

BigReal truncated_C(const ClassRecord& cls, i64 n, const TruncationConfig& cfg) {
  const CoeffEstimate a = coefficient_A(cls.params(), n, cfg);
  const int prec = cfg.precision;
  const BigReal scale = BigReal::pi(prec) * sqrt(BigReal(2L, prec)) * pow(BigReal(Rat(3, n), prec), 0.25);
  return abs(BigComplex{a.value, a.imag_residue}) / scale;
}

BigReal truncated_R(const ClassRecord& cls, i64 n, i64 c_max, int prec) {
  check_positive(n);
  const MultiplierParams params = cls.params();
  const MultiplierParams conj_params{params.N, mod(-params.v, params.h), params.h};
  const BigReal s3n = sqrt(BigReal(3 * n, prec));
  const BigReal pi = BigReal::pi(prec);
  BigComplex total{BigReal(prec), BigReal(prec)};
  for (i64 c = 2; c <= c_max; ++c) {
    const i64 M = 4 * params.N * c;
    const BigComplex k = params.trivial() ? kloosterman_factored(-3, n, M, prec)
                                          : kloosterman_sum(-3, n, M, conj_params, prec);
    const BigReal Nc(params.N * c, prec);
    const BigReal y = pi * s3n / Nc;
    BigReal scale = bessel_I_half(y) - sqrt(BigReal(2L, prec) * s3n / Nc);
    scale *= BigReal(static_cast<long>(1 + delta_odd(params.N * c)), prec) / BigReal(M, prec);
    const BigComplex t = k * scale;
    total += BigComplex{t.re + t.im, t.im - t.re};
  }
  return abs(total);
}

BigReal truncated_zeta(const ClassRecord& cls, i64 n, i64 c_max, int prec) {
  TruncationConfig cfg;
  cfg.c_max = c_max;
  cfg.precision = prec;
  return abs(zeta_truncated(cls.params(), -3, n, 0.75, cfg));
}

void PositivityConfig::validate() const {
  if (n_start < 40) throw std::invalid_argument("the positivity scan starts at n >= 40");
  if (n_end < n_start) throw std::invalid_argument("empty positivity range");
  if (precision < 64) throw std::invalid_argument("positivity precision must be at least 64 bits");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

namespace {

struct Weights {
  std::vector<std::vector<BigReal>> w;  // |chi_j(g)| / |C(g)|
  std::vector<std::size_t> series;      // class -> index into class_records()
};

Weights weights(int prec) {
  const CharacterTable& t = CharacterTable::thompson();
  Weights out;
  const auto& recs = class_records();
  for (const auto& cls : t.classes()) {
    const std::string& s = class_record(cls).label;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (recs[i].label == s) out.series.push_back(i);
    }
  }
  out.w.resize(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    for (std::size_t g = 0; g < t.size(); ++g) {
      out.w[j].push_back(abs(to_complex(t.value(j, g), prec)) / BigReal(t.centralizer_order(g), prec));
    }
  }
  return out;
}

struct NBounds {
  BigReal low_1A;
  std::vector<BigReal> upper;  // per series
};

NBounds bounds_at(i64 n, int prec) {
  NBounds b{lower_F_1A(n, prec), {}};
  for (const auto& r : class_records()) b.upper.push_back(bound_F(r, n, prec));
  return b;
}

BigReal lower_bound(const Weights& W, const NBounds& b, std::size_t j, int prec, std::string* worst) {
  BigReal low = W.w[j][0] * b.low_1A;
  BigReal biggest(prec);
  for (std::size_t g = 1; g < W.series.size(); ++g) {
    const BigReal t = W.w[j][g] * b.upper[W.series[g]];
    low -= t;
    if (worst && t > biggest) {
      biggest = t;
      *worst = CharacterTable::thompson().classes()[g];
    }
  }
  return low;
}

}  // namespace

BigReal multiplicity_lower_bound(std::size_t j, i64 n, int prec, std::string* worst_class) {
  if (j >= CharacterTable::thompson().size()) throw std::out_of_range("character index");
  return lower_bound(weights(prec), bounds_at(n, prec), j, prec, worst_class);
}

PositivityReport positivity_scan(const PositivityConfig& cfg) {
  cfg.validate();
  const int prec = cfg.precision;
  const Weights W = weights(prec);
  const std::size_t nchar = W.w.size();
  const std::vector<i64> all = plus_space_exponents(cfg.n_end);
  std::vector<i64> ns;
  for (i64 n : all) {
    if (n >= cfg.n_start) ns.push_back(n);
  }
  std::vector<std::vector<char>> ok(ns.size(), std::vector<char>(nchar, 0));
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const NBounds b = bounds_at(ns[i], prec);
    for (std::size_t j = 0; j < nchar; ++j) ok[i][j] = lower_bound(W, b, j, prec, nullptr).sign() > 0;
  }

  PositivityReport rep;
  rep.config = cfg;
  for (std::size_t j = 0; j < nchar; ++j) {
    CharacterThreshold ct;
    ct.character = j;
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (!ok[i][j]) last = i;
    }
    if (last) ct.last_failure = ns[*last];
    const std::size_t first_ok = last ? *last + 1 : 0;
    if (first_ok < ns.size()) {
      ct.n0 = last ? ns[*last] + 1 : cfg.n_start;
      const NBounds b = bounds_at(ns[first_ok], prec);
      const BigReal low = lower_bound(W, b, j, prec, &ct.worst_class);
      ct.margin = (low / (W.w[j][0] * b.low_1A)).to_double();
    }
    rep.characters.push_back(std::move(ct));
  }
  for (const auto& ct : rep.characters) {
    if (!ct.n0) {
      rep.overall_n0.reset();
      break;
    }
    rep.overall_n0 = std::max(rep.overall_n0.value_or(0), *ct.n0);
  }
  return rep;
}

ExactCheck exact_multiplicities(const CoeffCache& cache) {
  const CoeffMatrix C = build_C_plus(cache);
  const CharacterTable& t = CharacterTable::thompson();
  ExactCheck out;
  out.n_lo = 0;
  out.n_hi = C.exponents.back();
  for (std::size_t col = 0; col < C.exponents.size(); ++col) {
    const i64 n = C.exponents[col];
    if (n < 0) continue;
    ++out.columns;
    const MultiplicityVector mv = column_multiplicities(C, col, t);
    for (std::size_t j = 0; j < mv.m.size(); ++j) {
      const std::string where = "chi" + std::to_string(j + 1) + " at n = " + std::to_string(n);
      if (mv.m[j].get_den() != 1) out.non_integral.push_back(where);
      if (mv.m[j] < 0) out.negative.push_back(where);
    }
    if (mv.m[0] <= 0) out.trivial_zero.push_back(n);
  }
  return out;
}

}  // namespace thompson

#include "thompson/rademacher.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace thompson {

namespace {

Rat q(long a, long b = 1) { return Rat(a, b); }

std::vector<ClassRecord> build_records() {
  // label, |g|, v, h, corrections (m, kappa) for theta(m^2 tau), N_[g], merged classes
  std::vector<ClassRecord> r = {
      {"1A", 1, 0, 1, {{1, q(240)}}, 4, {"1A"}},
      {"2A", 2, 0, 1, {}, 8, {"2A"}},
      {"3A", 3, 1, 3, {{1, q(-6)}, {3, q(18)}}, 36, {"3A"}},
      {"3B", 3, 0, 1, {{1, q(6)}}, 12, {"3B"}},
      {"3C", 3, 2, 3, {}, 36, {"3C"}},
      {"4A", 4, 0, 1, {{2, q(8)}}, 16, {"4A"}},
      {"4B", 4, 7, 8, {}, 32, {"4B"}},
      {"5A", 5, 0, 1, {}, 20, {"5A"}},
      {"6A", 6, 5, 6, {}, 72, {"6A"}},
      {"6B", 6, 2, 3, {}, 72, {"6B"}},
      {"6C", 6, 0, 1, {}, 24, {"6C"}},
      {"7A", 7, 0, 1, {{1, q(2)}}, 28, {"7A"}},
      {"8A", 8, 7, 8, {}, 64, {"8A"}},
      {"8B", 8, 13, 16, {}, 128, {"8B"}},
      {"9A", 9, 0, 1, {{3, q(6)}}, 36, {"9A"}},
      {"9B", 9, 0, 1, {{3, q(-3)}}, 36, {"9B"}},
      {"9C", 9, 1, 3, {}, 108, {"9C"}},
      {"10A", 10, 0, 1, {}, 40, {"10A"}},
      {"12AB", 12, 7, 12, {{2, q(-1)}, {6, q(3)}}, 144, {"12A", "12B"}},
      {"12C", 12, 0, 1, {{2, q(-1)}}, 48, {"12C"}},
      {"12D", 12, 19, 24, {}, 288, {"12D"}},
      {"13A", 13, 0, 1, {{1, q(3, 7)}}, 52, {"13A"}},  // printed as 1/3, see README
      {"14A", 14, 0, 1, {}, 56, {"14A"}},
      {"15AB", 15, 1, 3, {}, 180, {"15A", "15B"}},
      {"18A", 18, 0, 1, {}, 72, {"18A"}},
      {"18B", 18, 2, 3, {}, 216, {"18B"}},
      {"19A", 19, 0, 1, {{1, q(3, 5)}}, 76, {"19A"}},
      {"20A", 20, 7, 8, {}, 160, {"20A"}},
      {"21A", 21, 1, 3, {{1, q(1, 8)}, {3, q(-3, 8)}}, 252, {"21A"}},
      {"24AB", 24, 19, 24, {}, 576, {"24A", "24B"}},
      {"24CD", 24, 37, 48, {}, 1152, {"24C", "24D"}},
      {"27A", 27, 1, 3, {{3, q(-1)}, {9, q(3)}}, 324, {"27A"}},
      {"27BC", 27, 1, 3, {{3, q(1, 2)}, {9, q(-3, 2)}}, 324, {"27B", "27C"}},
      {"28A", 28, 0, 1, {{2, q(1)}}, 112, {"28A"}},
      {"30AB", 30, 2, 3, {}, 360, {"30A", "30B"}},
      {"31AB", 31, 0, 1, {{1, q(-1, 4)}}, 124, {"31A", "31B"}},
      {"36A", 36, 0, 1, {{2, q(2)}, {6, q(-3)}}, 144, {"36A"}},
      {"36BC", 36, 0, 1, {{2, q(-1)}}, 144, {"36B", "36C"}},
      {"39AB", 39, 1, 3, {{1, q(-3, 7)}, {3, q(9, 7)}}, 468, {"39A", "39B"}},
  };
  for (const auto& c : r) c.validate();
  return r;
}

// Neumaier compensated sum.
struct Compensated {
  double sum = 0, comp = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Partial {
  BigComplex wide;
  Compensated re, im;
};

struct Range {
  i64 lo, hi;  // inclusive
};

void split_ranges(i64 lo, i64 hi, i64 chunk, std::vector<Range>& out) {
  for (i64 a = lo; a <= hi; a += chunk) out.push_back({a, std::min(hi, a + chunk - 1)});
}

// n + 16 v N c^2 / h (mod 4Nc): the conjugate multiplier folded into the
// second Kloosterman argument.
i64 twisted_n(const MultiplierParams& p, i64 n, i64 c, i64 M) {
  if (p.v == 0) return mod(n, M);
  const __int128 shift = static_cast<__int128>(16) * p.v * p.N * c * c / p.h;
  return mod(static_cast<i64>((static_cast<__int128>(mod(n, M)) + shift % M) % M), M);
}

void check_n(i64 n) {
  if (n < 0 || (mod(n, 4) != 0 && mod(n, 4) != 1)) {
    throw std::invalid_argument("coefficient index " + std::to_string(n) + " is not 0 or 1 mod 4");
  }
}

// (1 - i) z
template <class R>
Complex<R> times_one_minus_i(const Complex<R>& z) {
  return {z.re + z.im, z.im - z.re};
}

BigComplex prefactor_times(const BigComplex& s, i64 n, int prec) {
  const BigReal pi = BigReal::pi(prec);
  BigReal P(prec);
  if (n == 0) {
    P = BigReal(4L, prec) * pi * sqrt(BigReal(3L, prec));
  } else {
    P = pi * sqrt(BigReal(2L, prec)) * pow(BigReal(Rat(3, n), prec), 0.25);
  }
  return {s.re * P, s.im * P};
}

CoeffEstimate finish(i64 n, const BigComplex& total, const TruncationConfig& cfg) {
  CoeffEstimate e;
  e.n = n;
  e.c_max = cfg.c_max;
  const BigComplex v = prefactor_times(total, n, cfg.precision);
  e.value = v.re;
  e.imag_residue = abs(v.im);
  e.rounded = e.value.round_to_integer();
  e.distance_to_integer = distance_to_integer(e.value);
  e.precision_ok = e.value.is_zero() || e.value.exponent2() < cfg.precision - 40;
  return e;
}

BigComplex to_big(const Partial& p, int prec) {
  BigComplex r = p.wide;
  r.re += BigReal(p.re.value(), prec);
  r.im += BigReal(p.im.value(), prec);
  return r;
}

}  // namespace

void ClassRecord::validate() const {
  params().validate();
  for (const auto& t : kappas) {
    if (t.m < 1 || (h * order) % (t.m * t.m) != 0) {
      throw std::invalid_argument(label + ": theta correction m = " + std::to_string(t.m) +
                                  " needs m^2 | h|g|");
    }
  }
  if (merged_labels.empty()) throw std::invalid_argument(label + ": no class labels");
}

Rat ClassRecord::theta_term(i64 n) const {
  Rat s = 0;
  for (const auto& t : kappas) s += t.kappa * theta_coefficient(t.m, n);
  return s;
}

const std::vector<ClassRecord>& class_records() {
  static const std::vector<ClassRecord> records = build_records();
  return records;
}

const ClassRecord& class_record(const std::string& label) {
  for (const auto& r : class_records()) {
    if (r.label == label) return r;
    for (const auto& m : r.merged_labels) {
      if (m == label) return r;
    }
  }
  throw std::out_of_range("no series for class " + label);
}

void TruncationConfig::validate() const {
  if (c_max < 1) throw std::invalid_argument("c_max must be at least 1");
  if (precision < 53) throw std::invalid_argument("precision must be at least 53 bits");
  if (chunk < 1) throw std::invalid_argument("chunk must be positive");
}

BigReal bessel_I_half(const BigReal& x) {
  if (x.sign() <= 0) throw std::domain_error("I_1/2 needs x > 0");
  const int prec = x.precision();
  return sqrt(BigReal(2L, prec) / (BigReal::pi(prec) * x)) * sinh(x);
}

double bessel_I_half(double x) {
  if (!(x > 0)) throw std::domain_error("I_1/2 needs x > 0");
  return std::sqrt(2.0 / (M_PI * x)) * std::sinh(x);
}

double tail_estimate(i64 N, i64 c_max) { return 22.0 / (static_cast<double>(N) * std::sqrt(static_cast<double>(c_max))); }

std::vector<CoeffEstimate> coefficients_A(const MultiplierParams& params, const std::vector<i64>& ns,
                                          const TruncationConfig& cfg) {
  params.validate();
  cfg.validate();
  for (i64 n : ns) check_n(n);
  const int prec = cfg.precision;
  const i64 N = params.N;
  const auto sieve = shared_sieve(cfg.c_max);
  const Factorization f4N = factor_trial(4 * N);

  std::vector<Range> ranges;
  const i64 c_half = cfg.doubling_check ? cfg.c_max / 2 : 0;
  if (c_half >= 1) split_ranges(1, c_half, cfg.chunk, ranges);
  const std::size_t first_half = ranges.size();
  split_ranges(c_half + 1, cfg.c_max, cfg.chunk, ranges);

  std::vector<double> sqrt3n(ns.size());
  for (std::size_t j = 0; j < ns.size(); ++j) sqrt3n[j] = std::sqrt(3.0 * static_cast<double>(ns[j]));
  std::vector<BigReal> big_sqrt3n;
  for (i64 n : ns) big_sqrt3n.push_back(sqrt(BigReal(3 * n, prec)));
  const BigReal pi = BigReal::pi(prec);

  std::vector<std::vector<Partial>> partial(ranges.size());
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    std::vector<Partial> acc(ns.size(), Partial{{BigReal(prec), BigReal(prec)}, {}, {}});
    for (i64 c = ranges[r].lo; c <= ranges[r].hi; ++c) {
      const i64 M = 4 * N * c;
      const Factorization fM = merge(f4N, sieve->factor(c));
      const int w = 1 + delta_odd(N * c);
      const double Md = static_cast<double>(M);
      for (std::size_t j = 0; j < ns.size(); ++j) {
        const i64 n = ns[j];
        const i64 nt = twisted_n(params, n, c, M);
        if (vanishing_predicate(-3, nt, M)) continue;
        const double x = n == 0 ? 0.0 : M_PI * sqrt3n[j] / static_cast<double>(N * c);
        if (cfg.full_precision || (n > 0 && x >= cfg.wide_cutoff)) {
          Complex<BigReal> k = kloosterman_factored<BigReal>(-3, nt, M, fM, prec);
          BigReal scale(static_cast<long>(w), prec);
          const BigReal Mb(M, prec);
          if (n == 0) {
            scale /= Mb * sqrt(Mb);
          } else {
            scale *= bessel_I_half(pi * big_sqrt3n[j] / BigReal(N * c, prec)) / Mb;
          }
          acc[j].wide += times_one_minus_i(k * scale);
        } else {
          DComplex k = kloosterman_factored<double>(-3, nt, M, fM, 53);
          const double scale = n == 0 ? w / (Md * std::sqrt(Md)) : w * bessel_I_half(x) / Md;
          const DComplex t = times_one_minus_i(k * scale);
          acc[j].re.add(t.re);
          acc[j].im.add(t.im);
        }
      }
    }
    partial[r] = std::move(acc);
  }

  std::vector<CoeffEstimate> out;
  for (std::size_t j = 0; j < ns.size(); ++j) {
    BigComplex total{BigReal(prec), BigReal(prec)};
    std::optional<BigReal> half;
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      if (r == first_half && c_half >= 1) half = prefactor_times(total, ns[j], prec).re;
      total += to_big(partial[r][j], prec);
    }
    CoeffEstimate e = finish(ns[j], total, cfg);
    if (half) e.doubling_delta = abs(e.value - *half).to_double();
    out.push_back(std::move(e));
  }
  return out;
}

CoeffEstimate coefficient_A(const MultiplierParams& params, i64 n, const TruncationConfig& cfg) {
  return coefficients_A(params, {n}, cfg).front();
}

CoeffEstimate coefficient_A_reference(const MultiplierParams& params, i64 n, const TruncationConfig& cfg) {
  params.validate();
  cfg.validate();
  check_n(n);
  const int prec = cfg.precision;
  const MultiplierParams conj_params{params.N, mod(-params.v, params.h), params.h};
  const BigReal pi = BigReal::pi(prec);
  BigComplex total{BigReal(prec), BigReal(prec)};
  for (i64 c = 1; c <= cfg.c_max; ++c) {
    const i64 M = 4 * params.N * c;
    BigComplex k = kloosterman_sum(-3, n, M, conj_params, prec);
    const BigReal Mb(M, prec);
    BigReal scale(static_cast<long>(1 + delta_odd(params.N * c)), prec);
    if (n == 0) {
      scale /= Mb * sqrt(Mb);
    } else {
      const BigReal x = pi * sqrt(BigReal(3 * n, prec)) / BigReal(params.N * c, prec);
      scale *= bessel_I_half(x) / Mb;
    }
    total += times_one_minus_i(k * scale);
  }
  return finish(n, total, cfg);
}

BigComplex zeta_truncated(const MultiplierParams& params, i64 m, i64 n, double s, const TruncationConfig& cfg) {
  params.validate();
  cfg.validate();
  const int prec = cfg.precision;
  const auto sieve = shared_sieve(cfg.c_max);
  const Factorization f4N = factor_trial(4 * params.N);
  BigComplex wide{BigReal(prec), BigReal(prec)};
  Compensated re, im;
  for (i64 c = 1; c <= cfg.c_max; ++c) {
    const i64 M = 4 * params.N * c;
    const i64 nt = twisted_n(params, n, c, M);
    if (vanishing_predicate(m, nt, M)) continue;
    const Factorization fM = merge(f4N, sieve->factor(c));
    const int w = 1 + delta_odd(params.N * c);
    if (cfg.full_precision) {
      BigReal scale = BigReal(static_cast<long>(w), prec) / pow(BigReal(M, prec), 2 * s);
      wide += times_one_minus_i(kloosterman_factored<BigReal>(m, nt, M, fM, prec) * scale);
    } else {
      const double scale = w / std::pow(static_cast<double>(M), 2 * s);
      const DComplex t = times_one_minus_i(kloosterman_factored<double>(m, nt, M, fM, 53) * scale);
      re.add(t.re);
      im.add(t.im);
    }
  }
  wide.re += BigReal(re.value(), prec);
  wide.im += BigReal(im.value(), prec);
  return wide;
}

std::vector<i64> plus_space_exponents(i64 n_max) {
  std::vector<i64> out;
  for (i64 n = 0; n <= n_max; ++n) {
    if (n % 4 == 0 || n % 4 == 1) out.push_back(n);
  }
  return out;
}

namespace {

SeriesReport assemble(const std::vector<CoeffEstimate>& est, i64 lead, const ClassRecord* cls, i64 n_max,
                      const TruncationConfig& cfg) {
  SeriesReport rep;
  std::map<i64, Rat> terms{{-3, Rat(lead)}};
  for (const auto& e : est) {
    SeriesCoefficient sc;
    sc.n = e.n;
    sc.a = e;
    if (cls) {
      sc.assembled = e.value * 2.0 + BigReal(cls->theta_term(e.n), cfg.precision);
    } else {
      sc.assembled = e.value;
    }
    const Int r = sc.assembled.round_to_integer();
    sc.assembled_exact = Rat(r);
    sc.distance = distance_to_integer(sc.assembled).to_double();
    sc.converged = sc.distance <= cfg.threshold && e.precision_ok;
    if (e.doubling_delta) {
      sc.doubling_stable = (cls ? 2 : 1) * *e.doubling_delta + sc.distance < 0.5;
      sc.converged = sc.converged && *sc.doubling_stable;
    }
    rep.max_distance = std::max(rep.max_distance, sc.distance);
    if (!sc.converged) rep.unconverged.push_back(e.n);
    if (r != 0) terms[e.n] = Rat(r);
    rep.coefficients.push_back(std::move(sc));
  }
  rep.series = QSeries::from_integer_terms(terms, Rat(n_max + 1));
  return rep;
}

}  // namespace

SeriesReport series_Z(const MultiplierParams& params, i64 n_max, const TruncationConfig& cfg) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  return assemble(coefficients_A(params, plus_space_exponents(n_max), cfg), 1, nullptr, n_max, cfg);
}

SeriesReport series_F(const ClassRecord& cls, i64 n_max, const TruncationConfig& cfg) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  return assemble(coefficients_A(cls.params(), plus_space_exponents(n_max), cfg), 2, &cls, n_max, cfg);
}

}  // namespace thompson

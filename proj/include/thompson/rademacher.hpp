#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thompson/bigreal.hpp"
#include "thompson/kloosterman.hpp"
#include "thompson/qseries.hpp"

namespace thompson {

// kappa * theta(m^2 tau)
struct ThetaCorrection {
  i64 m = 1;
  Rat kappa;
};

struct ClassRecord {
  std::string label;  // e.g. "24CD"
  i64 order = 1;
  i64 v = 0;
  i64 h = 1;
  std::vector<ThetaCorrection> kappas;
  i64 level = 1;  // N_[g]
  std::vector<std::string> merged_labels;

  MultiplierParams params() const { return {order, v, h}; }
  // h | gcd(4|g|, 96) and m^2 | h|g| for every correction.
  void validate() const;
  // sum_m kappa_m * [q^n] theta(m^2 tau)
  Rat theta_term(i64 n) const;
};

// The 39 distinct series, in table order.
const std::vector<ClassRecord>& class_records();
// Accepts a series label ("12AB") or any merged class label ("12B").
const ClassRecord& class_record(const std::string& label);

struct TruncationConfig {
  i64 c_max = 10000;
  int precision = kDefaultPrecision;
  // Terms whose Bessel argument is at least this are summed in MPFR, the
  // rest in double with compensated summation.
  double wide_cutoff = 2.0;
  bool full_precision = false;
  i64 chunk = 2048;
  // Also record the partial sum at c_max / 2.
  bool doubling_check = false;
  int threads = 0;  // 0: OpenMP default
  double threshold = 0.1;

  void validate() const;
};

struct CoeffEstimate {
  i64 n = 0;
  BigReal value;
  BigReal imag_residue;
  i64 c_max = 0;
  Int rounded;
  BigReal distance_to_integer;
  // |value(c_max) - value(c_max / 2)| when the doubling check ran.
  std::optional<double> doubling_delta;
  // False when |value| is too large for the working precision to resolve
  // the fractional part.
  bool precision_ok = true;
};

// sqrt(2 / (pi x)) sinh(x); throws for x <= 0.
BigReal bessel_I_half(const BigReal& x);
double bessel_I_half(double x);

inline int delta_odd(i64 k) { return (k & 1) ? 1 : 0; }

// Heuristic size of the omitted tail of the c-sum at truncation c_max for a
// level-N sum, measured on the identity class.
double tail_estimate(i64 N, i64 c_max);

// Partial sums of
//   A(0) = 4 pi sqrt(3) (1-i) sum_c (1 + delta_odd(Nc)) K(-3, 0, 4Nc) / (4Nc)^(3/2)
//   A(n) = pi sqrt(2) (3/n)^(1/4) (1-i) sum_c (1 + delta_odd(Nc)) K(-3, n, 4Nc)/(4Nc) I_1/2(pi sqrt(3n)/(Nc))
// with K twisted by the conjugate of psi_{N,v,h}. Requires n = 0, 1 (mod 4).
CoeffEstimate coefficient_A(const MultiplierParams& params, i64 n, const TruncationConfig& cfg);
// Same sums for several n at once; the c loop runs in parallel over fixed
// chunks reduced in ascending order, so results do not depend on the thread
// count.
std::vector<CoeffEstimate> coefficients_A(const MultiplierParams& params, const std::vector<i64>& ns,
                                          const TruncationConfig& cfg);
// Serial reference: direct O(c) Kloosterman sums, everything in MPFR.
CoeffEstimate coefficient_A_reference(const MultiplierParams& params, i64 n, const TruncationConfig& cfg);

// sum_{c <= c_max} (1-i)(1 + delta_odd(Nc)) K(m, n, 4Nc) / (4Nc)^(2s), same
// multiplier convention as the coefficients.
BigComplex zeta_truncated(const MultiplierParams& params, i64 m, i64 n, double s, const TruncationConfig& cfg);

struct SeriesCoefficient {
  i64 n = 0;
  CoeffEstimate a;       // A(n)
  Rat assembled_exact;   // coefficient placed in the series
  BigReal assembled;     // unrounded value it came from
  double distance = 0;   // to the rounding lattice
  // Rounding unchanged between c_max / 2 and c_max (only when the doubling
  // check ran).
  std::optional<bool> doubling_stable;
  bool converged = true;
};

struct SeriesReport {
  QSeries series;
  std::vector<SeriesCoefficient> coefficients;
  double max_distance = 0;
  std::vector<i64> unconverged;
};

// q^-3 + sum_{0 <= n <= n_max, n = 0,1 mod 4} A(n) q^n, each A(n) rounded to
// the nearest integer.
SeriesReport series_Z(const MultiplierParams& params, i64 n_max, const TruncationConfig& cfg);
// F = 2 Z + sum kappa_m theta(m^2 tau). Each coefficient 2 A(n) + theta(n) is
// rounded to an integer; coefficients further than cfg.threshold from an
// integer are listed as unconverged.
SeriesReport series_F(const ClassRecord& cls, i64 n_max, const TruncationConfig& cfg);

// Plus-space exponents 0 <= n <= n_max.
std::vector<i64> plus_space_exponents(i64 n_max);

}  // namespace thompson

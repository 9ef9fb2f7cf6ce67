#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thompson/bigreal.hpp"
#include "thompson/cache.hpp"
#include "thompson/chartable.hpp"
#include "thompson/rademacher.hpp"

namespace thompson {

// Estimates for the c-sum
//   C_[g](n) = sum_c (1-i)(1 + delta_odd(Nc)) K(-3, n, 4Nc)/(4Nc) I_1/2(pi sqrt(3n)/(Nc)),
// so that A(n) = pi sqrt2 (3/n)^(1/4) C(n) and F_[g](n) = 2 A(n) + theta terms.
// N is the order |g|.

struct BoundInputs {
  i64 N = 1;
  i64 h_hat = 1;  // h / gcd(h, 4)
  i64 v_hat = 0;  // 4v / gcd(h, 4) mod h_hat
  i64 n = 0;
  i64 m = -3;

  i64 D() const { return m * n; }
  // Throws unless h_hat | gcd(N, 24) and v_hat = +-1 (mod h_hat).
  void validate() const;
  static BoundInputs from_class(const ClassRecord& cls, i64 n);
};

// 2 sqrt(N) / (pi (3n)^(1/4)) e^(pi sqrt(3n)/N).
BigReal bound_D(i64 N, i64 n, int prec);
// (-1)^n (I_1/2(pi sqrt(3n)) - sqrt2 (3n)^(1/4)).
BigReal exact_D_1A(i64 n, int prec);
// Mid range 2 <= c <= L plus the zeta(5/2) tail.
BigReal bound_R(i64 N, i64 n, int prec);
// Closed-form bound on |Z*(m, n; 3/4)|; rejects n < 40.
BigReal bound_zeta(const BoundInputs& in, int prec);

// |C(n)| <= |D| + |R| + sqrt8 (3n)^(1/4) |Z*|.
BigReal bound_C(const ClassRecord& cls, i64 n, int prec);
// sum_m |kappa_m| * #{k in Z : m^2 k^2 = n}.
Rat theta_bound(const ClassRecord& cls, i64 n);
// Upper bound on |F_[g](n)|.
BigReal bound_F(const ClassRecord& cls, i64 n, int prec);
// Lower bound on |F_1A(n)| from the exact dominant term.
BigReal lower_F_1A(i64 n, int prec);

// Oracles: truncated sums evaluated term by term.
BigReal truncated_C(const ClassRecord& cls, i64 n, const TruncationConfig& cfg);
BigReal truncated_R(const ClassRecord& cls, i64 n, i64 c_max, int prec);
BigReal truncated_zeta(const ClassRecord& cls, i64 n, i64 c_max, int prec);

struct PositivityConfig {
  i64 n_start = 40;
  i64 n_end = 10000;
  int precision = 128;
  int threads = 0;  // 0: OpenMP default

  void validate() const;
};

struct CharacterThreshold {
  std::size_t character = 0;
  // Least n0 with a positive lower bound for every plus-space n in
  // [n0, n_end]; empty when the bound still fails at n_end.
  std::optional<i64> n0;
  std::optional<i64> last_failure;
  // At the first plus-space n >= n0: the class subtracting the most, and the
  // lower bound divided by the dominant 1A term.
  std::string worst_class;
  double margin = 0;
};

struct ExactCheck {
  i64 n_lo = 0, n_hi = -1;
  std::size_t columns = 0;
  std::vector<std::string> negative;            // "chi_j at n"
  std::vector<std::string> non_integral;
  std::vector<i64> trivial_zero;               // n with trivial multiplicity 0
  bool nonnegative() const { return negative.empty() && non_integral.empty(); }
  bool trivial_positive() const { return trivial_zero.empty(); }
};

struct PositivityReport {
  PositivityConfig config;
  std::vector<CharacterThreshold> characters;
  std::optional<i64> overall_n0;  // max over characters
  static constexpr i64 kPublishedThreshold = 375;
};

// Lower bound on the multiplicity of character j in W_n.
BigReal multiplicity_lower_bound(std::size_t j, i64 n, int prec, std::string* worst_class = nullptr);

// Scans the plus-space n in [n_start, n_end]; per-n evaluations run in parallel.
PositivityReport positivity_scan(const PositivityConfig& cfg);

// Exact multiplicities from the cached coefficients for every plus-space
// 0 <= n <= largest common coverage.
ExactCheck exact_multiplicities(const CoeffCache& cache);

}  // namespace thompson

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thompson/cache.hpp"
#include "thompson/chartable.hpp"
#include "thompson/matrix.hpp"

namespace thompson {

// Thrown when the cache lacks series or columns a computation needs.
class DataGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<i64>& theta_roots() {
  static const std::vector<i64> r = {1, 2, 3, 6, 9};
  return r;
}
std::string theta_label(i64 m);  // "theta9" for theta(9 tau), m = 3

// Rows: the 48 classes in character-table order, then theta1, theta4,
// theta9, theta36, theta81. Columns: plus-space exponents -3, 0, 1, 4, ... <= B.
struct CoeffMatrix {
  std::vector<std::string> rows;
  std::vector<i64> exponents;
  std::vector<std::vector<Int>> entries;

  std::size_t row_index(const std::string& label) const;  // series labels map to their first class
  std::size_t class_rows() const { return 48; }
  RatMatrix to_rat() const;
};

// C+ from the cache up to exponent B (default: the largest B every series
// covers). Throws DataGap naming the missing series.
CoeffMatrix build_C_plus(const CoeffCache& cache, std::optional<i64> B = std::nullopt);

// sum coeff * row; modulus 0 for an exact relation.
struct LinearForm {
  std::vector<std::pair<std::string, Rat>> terms;
  Int modulus = 0;
  std::string source;  // file:line or a description

  std::string to_string() const;
  long prime() const;  // p for modulus p^s
  int exponent() const;
};

std::vector<LinearForm> load_linear_forms(const std::string& path, bool with_modulus);
std::vector<LinearForm> shipped_relations();
std::vector<LinearForm> shipped_congruences();
// [g] - alpha_g(0) theta1 (mod 2) for odd-order classes, theta_m - theta1 (mod 2).
std::vector<LinearForm> parity_congruences(const CoeffMatrix& C);

struct FormCheck {
  LinearForm form;
  bool ok = true;
  std::vector<i64> failing_columns;
  std::string residue;  // first failing residue, or the largest |value| for relations
};

std::vector<FormCheck> verify_linear_relations(const CoeffMatrix& C, const std::vector<LinearForm>& relations);
std::vector<FormCheck> verify_congruences(const CoeffMatrix& C, const std::vector<LinearForm>& congruences);

struct Reduction {
  std::vector<std::string> retained;        // order of N* rows (priority order)
  std::vector<std::string> recipe_removed;  // duplicates + one per relation
  std::vector<std::string> rank_removed;    // further rows dropped for rank
  RatMatrix N_star;  // |retained| x 53 selection
  RatMatrix N_full;  // 53 x |retained|: every C+ row in terms of retained rows
  RatMatrix N;       // first 48 rows of N_full
  std::size_t rank_C_plus = 0;
};

inline constexpr std::size_t kPublishedReducedRank = 35;

// Priority order used for "highest": thetas first, then classes in table order.
std::size_t priority(const CoeffMatrix& C, const std::string& label);

Reduction build_reduction(const CoeffMatrix& C, const std::vector<LinearForm>& relations);

struct MpResult {
  long p = 0;
  RatMatrix M;
  std::vector<std::string> replaced_rows;
  std::vector<std::string> skipped;  // congruences whose pivot row was taken
  std::vector<std::string> discovered;  // rows added by saturate_Mp
};

MpResult build_Mp(long p, const std::vector<LinearForm>& congruences, const Reduction& red, const CoeffMatrix& C);

// Extends M_p with congruences read off the left kernel of M_p N* C+ mod p
// until that matrix has full rank mod p. Requires M_p N* C+ integral.
void saturate_Mp(MpResult& mp, const Reduction& red, const CoeffMatrix& C);

// X[chi][g] = chi(g) / |C(g)|, applied to the merged rows: X N is rational.
RatMatrix XN_matrix(const CharacterTable& table, const Reduction& red);

struct Certificate {
  long p = 0;
  bool integral = false;          // M_p N* C+ integral
  bool p_integral = false;        // X N M_p^-1 p-integral
  std::size_t dim = 0;            // retained rows
  std::size_t rank_mod_p = 0;     // of M_p N* C+
  bool reproduces_decompose = false;
  bool lower_triangular = false;  // M_p in priority order
  std::vector<std::string> violations;
  bool ok() const { return integral && p_integral && rank_mod_p == dim && reproduces_decompose; }
};

Certificate integrality_certificate(const MpResult& mp, const Reduction& red, const CoeffMatrix& C,
                                    const CharacterTable& table);

// Multiplicities (with the (-1)^n sign) of column j of C via the character table.
MultiplicityVector column_multiplicities(const CoeffMatrix& C, std::size_t column, const CharacterTable& table);

}  // namespace thompson

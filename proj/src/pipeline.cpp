#include "thompson/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "thompson/rademacher.hpp"

namespace thompson {

std::string theta_label(i64 m) { return "theta" + std::to_string(m * m); }

std::size_t CoeffMatrix::row_index(const std::string& label) const {
  auto it = std::find(rows.begin(), rows.end(), label);
  if (it != rows.end()) return static_cast<std::size_t>(it - rows.begin());
  const ClassRecord& r = class_record(label);
  it = std::find(rows.begin(), rows.end(), r.merged_labels.front());
  if (it == rows.end()) throw std::out_of_range("no row for " + label);
  return static_cast<std::size_t>(it - rows.begin());
}

RatMatrix CoeffMatrix::to_rat() const {
  RatMatrix m(rows.size(), exponents.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < exponents.size(); ++j) m.at(i, j) = Rat(entries[i][j]);
  }
  return m;
}

CoeffMatrix build_C_plus(const CoeffCache& cache, std::optional<i64> B) {
  const CharacterTable& table = CharacterTable::thompson();
  std::vector<std::string> missing;
  i64 covered = std::numeric_limits<i64>::max();
  for (const auto& r : class_records()) {
    if (!cache.has(r.label)) {
      missing.push_back(r.label);
      continue;
    }
    covered = std::min(covered, cache.covered_to(r.label));
  }
  if (!missing.empty()) {
    std::string s;
    for (const auto& m : missing) s += (s.empty() ? "" : ", ") + m;
    throw DataGap("cache has no coefficients for " + s);
  }
  const i64 bound = B.value_or(covered);
  if (bound > covered) {
    std::string s;
    for (const auto& r : class_records()) {
      if (cache.covered_to(r.label) < bound) s += (s.empty() ? "" : ", ") + r.label;
    }
    throw DataGap("columns up to " + std::to_string(bound) + " missing for " + s);
  }
  CoeffMatrix C;
  C.exponents.push_back(-3);
  for (i64 n : plus_space_exponents(bound)) C.exponents.push_back(n);
  for (const auto& cls : table.classes()) {
    const std::string series = class_record(cls).label;
    std::vector<Int> row;
    for (i64 n : C.exponents) row.push_back(*cache.coeff(series, n));
    C.rows.push_back(cls);
    C.entries.push_back(std::move(row));
  }
  for (i64 m : theta_roots()) {
    std::vector<Int> row;
    for (i64 n : C.exponents) row.push_back(Int(theta_coefficient(m, n)));
    C.rows.push_back(theta_label(m));
    C.entries.push_back(std::move(row));
  }
  return C;
}

std::string LinearForm::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [label, c] : terms) {
    out << (first ? "" : " ") << (c >= 0 && !first ? "+" : "") << thompson::to_string(c) << "[" << label << "]";
    first = false;
  }
  if (modulus != 0) {
    out << " = 0 (mod " << modulus.get_str() << ")";
  } else {
    out << " = 0";
  }
  return out.str();
}

long LinearForm::prime() const {
  if (modulus < 2) return 0;
  Int m = modulus;
  for (long p = 2;; ++p) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) return p;
  }
}

int LinearForm::exponent() const {
  const long p = prime();
  if (p == 0) return 0;
  Int m = modulus;
  int s = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    m /= p;
    ++s;
  }
  if (m != 1) throw std::invalid_argument("modulus " + modulus.get_str() + " is not a prime power");
  return s;
}

std::vector<LinearForm> load_linear_forms(const std::string& path, bool with_modulus) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<LinearForm> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    LinearForm f;
    f.source = path.substr(path.find_last_of('/') + 1) + ":" + std::to_string(lineno);
    try {
      if (with_modulus) {
        std::string m;
        ls >> m;
        f.modulus = Int(m);
        f.exponent();
      }
      std::string term;
      while (ls >> term) {
        const auto colon = term.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("expected label:coefficient, got " + term);
        f.terms.emplace_back(term.substr(0, colon), parse_rat(term.substr(colon + 1)));
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(f.source + ": " + e.what());
    }
    if (f.terms.empty()) throw std::runtime_error(f.source + ": empty form");
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<LinearForm> shipped_relations() { return load_linear_forms(data_dir() + "/relations.txt", false); }
std::vector<LinearForm> shipped_congruences() { return load_linear_forms(data_dir() + "/congruences.txt", true); }

std::vector<LinearForm> parity_congruences(const CoeffMatrix& C) {
  std::vector<LinearForm> out;
  const std::size_t col0 = static_cast<std::size_t>(
      std::find(C.exponents.begin(), C.exponents.end(), 0) - C.exponents.begin());
  if (col0 == C.exponents.size()) throw DataGap("parity congruences need the constant term");
  for (const auto& r : class_records()) {
    if (r.order % 2 == 0) continue;
    LinearForm f;
    const Int a0 = C.entries[C.row_index(r.label)][col0];
    f.terms = {{r.label, Rat(1)}, {theta_label(1), Rat(-a0)}};
    f.modulus = 2;
    f.source = "odd order " + r.label;
    out.push_back(std::move(f));
  }
  for (i64 m : theta_roots()) {
    if (m == 1) continue;
    LinearForm f;
    f.terms = {{theta_label(m), Rat(1)}, {theta_label(1), Rat(-1)}};
    f.modulus = 2;
    f.source = "theta parity " + theta_label(m);
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

Rat combine(const CoeffMatrix& C, const LinearForm& f, std::size_t col) {
  Rat s = 0;
  for (const auto& [label, c] : f.terms) s += c * Rat(C.entries[C.row_index(label)][col]);
  return s;
}

}  // namespace

std::vector<FormCheck> verify_linear_relations(const CoeffMatrix& C, const std::vector<LinearForm>& relations) {
  std::vector<FormCheck> out;
  for (const auto& f : relations) {
    FormCheck fc{f, true, {}, "0"};
    Rat worst = 0;
    for (std::size_t j = 0; j < C.exponents.size(); ++j) {
      const Rat v = combine(C, f, j);
      if (v != 0) {
        fc.ok = false;
        fc.failing_columns.push_back(C.exponents[j]);
        if (abs(v) > worst) worst = abs(v);
      }
    }
    fc.residue = to_string(worst);
    out.push_back(std::move(fc));
  }
  return out;
}

std::vector<FormCheck> verify_congruences(const CoeffMatrix& C, const std::vector<LinearForm>& congruences) {
  std::vector<FormCheck> out;
  for (const auto& f : congruences) {
    FormCheck fc{f, true, {}, ""};
    for (std::size_t j = 0; j < C.exponents.size(); ++j) {
      const Rat v = combine(C, f, j);
      bool good = v.get_den() == 1;
      Int r = 0;
      if (good) {
        mpz_fdiv_r(r.get_mpz_t(), v.get_num_mpz_t(), f.modulus.get_mpz_t());
        good = r == 0;
      }
      if (!good) {
        if (fc.ok) fc.residue = "column " + std::to_string(C.exponents[j]) + ": " + (v.get_den() == 1 ? r.get_str() : to_string(v));
        fc.ok = false;
        fc.failing_columns.push_back(C.exponents[j]);
      }
    }
    out.push_back(std::move(fc));
  }
  return out;
}

std::size_t priority(const CoeffMatrix& C, const std::string& label) {
  const std::size_t i = C.row_index(label);
  const std::size_t k = C.class_rows();
  return i >= k ? i - k : i + (C.rows.size() - k);
}

Reduction build_reduction(const CoeffMatrix& C, const std::vector<LinearForm>& relations) {
  Reduction red;
  const std::size_t total = C.rows.size();
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[priority(C, C.rows[i])] = i;

  std::set<std::size_t> removed;
  for (const auto& r : class_records()) {
    for (std::size_t k = 1; k < r.merged_labels.size(); ++k) {
      removed.insert(C.row_index(r.merged_labels[k]));
      red.recipe_removed.push_back(r.merged_labels[k]);
    }
  }
  for (const auto& f : relations) {
    std::size_t best = total;
    for (const auto& [label, c] : f.terms) {
      const std::size_t i = C.row_index(label);
      if (i >= C.class_rows()) continue;
      if (best == total || priority(C, C.rows[i]) > priority(C, C.rows[best])) best = i;
    }
    if (best != total && removed.insert(best).second) red.recipe_removed.push_back(C.rows[best]);
  }

  const RatMatrix Cr = C.to_rat();
  RowSpace space(C.exponents.size());
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    if (removed.count(i)) continue;
    if (space.add(Cr.row(i), kept.size())) {
      kept.push_back(i);
      red.retained.push_back(C.rows[i]);
    } else {
      red.rank_removed.push_back(C.rows[i]);
    }
  }

  const std::size_t k = kept.size();
  red.rank_C_plus = k;
  red.N_star = RatMatrix(k, total);
  for (std::size_t a = 0; a < k; ++a) red.N_star.at(a, kept[a]) = 1;
  red.N_full = RatMatrix(total, k);
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<std::pair<std::size_t, Rat>> coords;
    if (!space.express(Cr.row(i), coords)) {
      throw std::runtime_error("row " + C.rows[i] + " is not reconstructed by the retained rows");
    }
    for (const auto& [id, c] : coords) red.N_full.at(i, id) = c;
  }
  red.N = RatMatrix(C.class_rows(), k);
  for (std::size_t i = 0; i < C.class_rows(); ++i) {
    for (std::size_t a = 0; a < k; ++a) red.N.at(i, a) = red.N_full.at(i, a);
  }
  return red;
}

MpResult build_Mp(long p, const std::vector<LinearForm>& congruences, const Reduction& red, const CoeffMatrix& C) {
  MpResult out;
  out.p = p;
  const std::size_t k = red.retained.size();
  out.M = RatMatrix::identity(k);
  std::vector<bool> taken(k, false);
  for (const auto& f : congruences) {
    if (f.prime() != p) continue;
    std::vector<Rat> y(k, Rat(0));
    for (const auto& [label, c] : f.terms) {
      const std::size_t row = C.row_index(label);
      for (std::size_t a = 0; a < k; ++a) y[a] += c * red.N_full.at(row, a);
    }
    std::size_t h = k;
    for (std::size_t a = 0; a < k; ++a) {
      if (y[a] != 0) h = a;
    }
    if (h == k) throw std::runtime_error(f.source + ": congruence is trivial on the retained rows");
    if (taken[h]) {
      out.skipped.push_back(f.source + " (row " + red.retained[h] + ")");
      continue;
    }
    taken[h] = true;
    const Rat inv = (y[h] < 0 ? Rat(-1) : Rat(1)) / Rat(f.modulus);
    for (auto& x : y) x *= inv;
    out.M.set_row(h, y);
    out.replaced_rows.push_back(red.retained[h]);
  }
  return out;
}

void saturate_Mp(MpResult& mp, const Reduction& red, const CoeffMatrix& C) {
  const RatMatrix base = red.N_star * C.to_rat();
  for (;;) {
    const RatMatrix A = mp.M * base;
    if (!A.is_integral()) throw std::domain_error("M_p N* C+ is not integral; fix the congruence list first");
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      std::vector<Int> r;
      for (std::size_t j = 0; j < A.cols(); ++j) r.push_back(A.at(i, j).get_num());
      rows.push_back(std::move(r));
    }
    const auto kernel = left_kernel_mod_p(rows, mp.p);
    if (kernel.empty()) return;
    const auto& x = kernel.front();
    std::size_t h = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0) h = i;
    }
    std::vector<Rat> row(mp.M.cols(), Rat(0));
    std::string desc;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] += Rat(x[i]) * mp.M.at(i, j);
      desc += (desc.empty() ? "" : " + ") + std::to_string(x[i]) + "*row(" + red.retained[i] + ")";
    }
    for (auto& v : row) v /= mp.p;
    mp.M.set_row(h, row);
    mp.discovered.push_back("(" + desc + ")/" + std::to_string(mp.p) + " replaces " + red.retained[h]);
  }
}

RatMatrix XN_matrix(const CharacterTable& table, const Reduction& red) {
  const std::size_t n = table.size(), k = red.N.cols();
  RatMatrix out(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      QuadSum s;
      for (std::size_t g = 0; g < n; ++g) {
        const Rat& w = red.N.at(g, a);
        if (w == 0) continue;
        s += table.value(i, g) * QuadIm(w / Rat(table.centralizer_order(g)));
      }
      out.at(i, a) = s.to_rational();
    }
  }
  return out;
}

MultiplicityVector column_multiplicities(const CoeffMatrix& C, std::size_t column, const CharacterTable& table) {
  std::vector<Rat> omega;
  for (std::size_t g = 0; g < table.size(); ++g) omega.emplace_back(C.entries[C.row_index(table.classes()[g])][column]);
  return table.decompose(omega, C.exponents[column]);
}

Certificate integrality_certificate(const MpResult& mp, const Reduction& red, const CoeffMatrix& C,
                                    const CharacterTable& table) {
  Certificate cert;
  cert.p = mp.p;
  const RatMatrix A = mp.M * (red.N_star * C.to_rat());
  cert.integral = A.is_integral();
  if (!cert.integral) {
    for (std::size_t i = 0; i < A.rows() && cert.violations.size() < 10; ++i) {
      for (std::size_t j = 0; j < A.cols(); ++j) {
        if (A.at(i, j).get_den() != 1) {
          cert.violations.push_back("M N* C+ row " + red.retained[i] + " column " + std::to_string(C.exponents[j]) +
                                    " = " + to_string(A.at(i, j)));
          break;
        }
      }
    }
  }
  const RatMatrix Bm = XN_matrix(table, red) * mp.M.inverse();
  cert.p_integral = Bm.is_p_integral(mp.p);
  if (!cert.p_integral) {
    for (std::size_t i = 0; i < Bm.rows() && cert.violations.size() < 20; ++i) {
      for (std::size_t j = 0; j < Bm.cols(); ++j) {
        if (mpz_divisible_ui_p(Bm.at(i, j).get_den_mpz_t(), static_cast<unsigned long>(mp.p))) {
          cert.violations.push_back("X N M^-1 row X" + std::to_string(i + 1) + " column " + red.retained[j] +
                                    " = " + to_string(Bm.at(i, j)));
          break;
        }
      }
    }
  }
  if (cert.integral) {
    std::vector<std::vector<Int>> rowsA;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      std::vector<Int> r;
      for (std::size_t j = 0; j < A.cols(); ++j) r.push_back(A.at(i, j).get_num());
      rowsA.push_back(std::move(r));
    }
    cert.rank_mod_p = rank_mod_p(rowsA, mp.p);
  }
  const RatMatrix m = Bm * A;
  cert.reproduces_decompose = true;
  for (std::size_t j = 0; j < C.exponents.size(); ++j) {
    const MultiplicityVector mv = column_multiplicities(C, j, table);
    const Rat sign = C.exponents[j] % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (sign * m.at(i, j) != mv.m[i]) {
        cert.reproduces_decompose = false;
        if (cert.violations.size() < 30) {
          cert.violations.push_back("multiplicity X" + std::to_string(i + 1) + " column " +
                                    std::to_string(C.exponents[j]) + " differs from decompose");
        }
      }
    }
  }
  cert.dim = red.retained.size();
  cert.lower_triangular = mp.M.is_lower_triangular();
  return cert;
}

}  // namespace thompson

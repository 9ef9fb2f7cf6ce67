// One line per acceptance criterion. Exit status: 0 when every verdict matches
// data/acceptance_expected.txt (or, with --strict, when every criterion passes).

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <algorithm>
#include <map>
#include <sstream>
#include <string>

#include "thompson/cache.hpp"
#include "thompson/chartable.hpp"
#include "thompson/kloosterman.hpp"
#include "thompson/pipeline.hpp"
#include "thompson/positivity.hpp"
#include "thompson/qseries.hpp"
#include "thompson/rademacher.hpp"
#include "thompson/replicability.hpp"

using namespace thompson;

namespace {

// Pinned tolerances and limits.
constexpr double kConstTol = 0.1;        // F_1A(0) vs 248
constexpr double kQ4Tol = 0.5;           // F_1A(4) vs 54000
constexpr double kVanishTol = 1e-12;     // |K| < tol * c
constexpr double kFactoredTol = 1e-15;   // |factored - direct|
constexpr i64 kCoeffCMax = 10000;
constexpr int kCoeffPrec = 128;
constexpr i64 kPipelineB = 100;
constexpr i64 kReplOrder = 50;
constexpr int kReplM = 20;
constexpr i64 kScanEnd = 10000;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  double limit_seconds;  // 0: no runtime bound
  std::function<Verdict()> run;
};

const CoeffCache& cache() {
  static const CoeffCache c = CoeffCache::read(data_dir() + "/reference_cache.txt");
  return c;
}

i64 common_B() {
  i64 B = std::numeric_limits<i64>::max();
  for (const auto& r : class_records()) B = std::min(B, cache().covered_to(r.label));
  return B;
}

std::string join(const std::vector<std::string>& v, std::size_t limit = 6) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? ", " : "") + v[i];
  if (v.size() > limit) s += ", ...";
  return s;
}

Verdict c1() {
  const CharacterTable& t = CharacterTable::thompson();
  const SchurReport s = t.schur_check();
  const bool order = t.centralizer_order(0) == Int("90745943887872000");
  std::ostringstream d;
  d << "Schur " << (s.ok ? "ok" : "FAILED") << " over " << s.pairs_checked << " pairs; |C(1A)| = "
    << t.centralizer_order(0).get_str();
  return {s.ok && s.pairs_checked == 48 * 48 && order, d.str()};
}

Verdict c2() {
  TruncationConfig cfg;
  cfg.c_max = kCoeffCMax;
  cfg.precision = kCoeffPrec;
  const CharacterTable& t = CharacterTable::thompson();
  auto F = [&](const std::string& label, i64 n) {
    const ClassRecord& r = class_record(label);
    return (coefficient_A(r.params(), n, cfg).value * 2.0 + BigReal(r.theta_term(n), kCoeffPrec)).to_double();
  };
  const double f0 = F("1A", 0), f4 = F("1A", 4);
  bool ok = std::abs(f0 - 248) < kConstTol && std::abs(f4 - 54000) < kQ4Tol;
  std::ostringstream d;
  d.precision(10);
  d << "F_1A(0) = " << f0 << ", F_1A(4) = " << f4;
  const std::map<std::string, long> want{{"2A", -8}, {"3A", 14}, {"4A", 8}};
  for (const auto& [label, v] : want) {
    const double f = F(label, 0);
    const long chi2 = std::lround(to_complex(t.value(1, t.class_index(label)), 64).re.to_double());
    ok = ok && std::lround(f) == v && chi2 == v;
    d << "; F_" << label << "(0) = " << f;
  }
  return {ok, d.str()};
}

Verdict c3() {
  std::size_t vanish_checked = 0, factored_checked = 0;
  std::vector<std::string> vanish_bad;
  std::size_t bad_8 = 0, bad_16 = 0;
  double worst_factored = 0;
  for (i64 c = 4; c <= 512; c += 4) {
    for (i64 m = 0; m <= 12; ++m) {
      for (i64 n = 0; n <= 12; ++n) {
        const bool need_vanish = c % 8 == 0 && (m - n) % 4 != 0;
        const bool need_factored = c <= 256;
        if (!need_vanish && !need_factored) continue;
        const BigComplex k = kloosterman_sum(m, n, c, std::nullopt, 128);
        if (need_vanish) {
          ++vanish_checked;
          if (!(abs(k).to_double() < kVanishTol * static_cast<double>(c))) {
            (c % 16 == 0 ? bad_16 : bad_8)++;
            if (vanish_bad.size() < 3) {
              vanish_bad.push_back("K(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(c) + ")");
            }
          }
        }
        if (need_factored) {
          ++factored_checked;
          const BigComplex f = kloosterman_factored(m, n, c, 128);
          worst_factored = std::max(worst_factored, abs(f - k).to_double());
        }
      }
    }
  }
  std::ostringstream d;
  d << vanish_checked << " vanishing cases, " << (bad_8 + bad_16) << " nonzero (" << bad_8 << " with 8 || c, " << bad_16
    << " with 16 | c; e.g. " << join(vanish_bad) << "); factored vs direct over " << factored_checked
    << " sums: max diff " << worst_factored;
  return {bad_8 + bad_16 == 0 && worst_factored < kFactoredTol, d.str()};
}

Verdict c4() {
  const CoeffMatrix C = build_C_plus(cache(), common_B());
  const auto printed = verify_linear_relations(C, load_linear_forms(data_dir() + "/relations_printed.txt", false));
  const auto shipped = verify_linear_relations(C, shipped_relations());
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < printed.size(); ++i) {
    if (!printed[i].ok) {
      bad.push_back("relation " + std::to_string(i + 1) + " (" + std::to_string(printed[i].failing_columns.size()) +
                    " columns, max |residue| " + printed[i].residue + ")");
    }
  }
  std::size_t corrected = 0;
  for (const auto& f : shipped) corrected += f.ok;
  std::ostringstream d;
  d << "printed: " << (printed.size() - bad.size()) << "/" << printed.size() << " hold on " << C.exponents.size()
    << " columns";
  if (!bad.empty()) d << "; failing " << join(bad);
  d << "; sign-corrected set: " << corrected << "/" << shipped.size() << " hold";
  return {bad.empty() && printed.size() == 5, d.str()};
}

Verdict c5() {
  const i64 B = common_B();
  const CoeffMatrix C = build_C_plus(cache(), B);
  const auto listed = verify_congruences(C, shipped_congruences());
  const auto parity = verify_congruences(C, parity_congruences(C));
  std::size_t lok = 0, pok = 0;
  std::vector<std::string> bad;
  for (const auto& f : listed) {
    lok += f.ok;
    if (!f.ok) bad.push_back(f.form.to_string());
  }
  for (const auto& f : parity) {
    pok += f.ok;
    if (!f.ok) bad.push_back(f.form.to_string() + " at n = " + std::to_string(f.failing_columns.front()));
  }
  std::ostringstream d;
  d << "B = " << B << " (" << C.exponents.size() << " columns): listed " << lok << "/" << listed.size()
    << ", odd-order parity statements " << pok << "/" << parity.size();
  if (!bad.empty()) d << "; failing " << join(bad, 3);
  d << "; gap: columns " << B + 1 << "..10000 not computed";
  return {bad.empty(), d.str()};
}

Verdict c6() {
  const CharacterTable& table = CharacterTable::thompson();
  const CoeffMatrix C = build_C_plus(cache(), kPipelineB);
  const Reduction red = build_reduction(C, shipped_relations());
  std::vector<LinearForm> listed = shipped_congruences();
  for (auto& f : parity_congruences(C)) listed.push_back(std::move(f));
  bool ok = true;
  std::ostringstream d;
  d << "B = " << kPipelineB << ", rank C+ = " << red.rank_C_plus << ", N* rows = " << red.retained.size()
    << " (expected " << kPublishedReducedRank << ");";
  for (long p : {2L, 3L, 5L, 7L, 13L, 19L, 31L}) {
    const MpResult mp = build_Mp(p, listed, red, C);
    const Certificate c = integrality_certificate(mp, red, C, table);
    const bool good = c.integral && c.p_integral && c.rank_mod_p == kPublishedReducedRank && c.reproduces_decompose;
    ok = ok && good;
    d << " p=" << p << ":" << (c.integral ? "" : "nonintegral,") << (c.p_integral ? "" : "not-p-integral,")
      << "rank " << c.rank_mod_p << (c.reproduces_decompose ? "" : ",decompose-mismatch");
  }
  // Supplementary: congruences consistent with the data, plus left-kernel saturation, at the full range.
  const CoeffMatrix Cf = build_C_plus(cache(), common_B());
  const Reduction rf = build_reduction(Cf, shipped_relations());
  std::vector<LinearForm> all = shipped_congruences();
  for (auto& f : parity_congruences(Cf)) all.push_back(std::move(f));
  std::vector<LinearForm> holding;
  for (const auto& f : verify_congruences(Cf, all)) {
    if (f.ok) holding.push_back(f.form);
  }
  std::size_t certified = 0;
  for (long p : {2L, 3L, 5L, 7L, 13L, 19L, 31L}) {
    MpResult mp = build_Mp(p, holding, rf, Cf);
    saturate_Mp(mp, rf, Cf);
    certified += integrality_certificate(mp, rf, Cf, table).ok();
  }
  d << "; supplementary (holding congruences + saturation, B = " << common_B() << "): " << certified
    << "/7 primes certify at rank " << rf.retained.size();
  return {ok, d.str()};
}

Verdict c7() {
  const CoeffMatrix C = build_C_plus(cache(), 4);
  const CharacterTable& t = CharacterTable::thompson();
  auto unit = [&](std::initializer_list<std::size_t> idx) {
    std::vector<Rat> e(t.size(), Rat(0));
    for (std::size_t i : idx) e[i - 1] = 1;
    return e;
  };
  const auto m0 = column_multiplicities(C, 1, t).m;
  const auto m4 = column_multiplicities(C, 3, t).m;
  const bool ok = C.exponents[1] == 0 && C.exponents[3] == 4 && m0 == unit({2}) && m4 == unit({4, 5});
  return {ok, std::string("n = 0 ") + (m0 == unit({2}) ? "= e2" : "!= e2") + ", n = 4 " +
                  (m4 == unit({4, 5}) ? "= e4 + e5" : "!= e4 + e5")};
}

Verdict c8() {
  const auto ids = shipped_identities();
  std::size_t rows = 0, good = 0;
  std::vector<std::string> bad;
  for (const auto& id : ids) {
    if (id.label != "1A" && id.label != "2A" && id.label != "3B" && id.label != "4A" && id.label != "4B" &&
        id.label != "6C") {
      continue;
    }
    ++rows;
    const IdentityCheck r = verify_identity(id, cache().as_qseries(id.label), kReplOrder, ids);
    good += r.ok;
    if (!r.ok) bad.push_back(id.label + " " + id.component + " to q^" + std::to_string(r.checked_to));
  }
  const QSeries x = eta_expansion(EtaQuotient::parse("1^24/2^24"), Rat(2 * kReplM + 5));
  const BivariateSeries H = h_table(x, kReplM);
  const ReplicabilityReport rr = is_replicable(H);
  std::ostringstream d;
  d << good << "/" << rows << " identity rows hold to q^" << kReplOrder;
  if (!bad.empty()) d << " (failing " << join(bad) << ")";
  d << "; H-table M = " << kReplM << ": " << rr.compared << " comparisons, " << rr.violations.size() << " violations";
  return {rows == 18 && good == rows && rr.ok(), d.str()};
}

Verdict c9() {
  const i64 s = sturm_bound(10, 1152);  // numerator 2k = 10, (k/6)[SL2(Z) : Gamma0(N)]
  return {s == 1920 && s < 2000, "sturm_bound(2k = 10, N = 1152) = " + std::to_string(s)};
}

Verdict c10() {
  // (a) truncated sums against the assembled bound.
  const std::vector<i64> ns{40, 100, 200, 400};
  std::size_t compared = 0;
  std::vector<std::string> above;
  double worst_ratio = 0;
  for (const auto& r : class_records()) {
    TruncationConfig cfg;
    cfg.c_max = kCoeffCMax;
    cfg.precision = 192;
    const auto est = coefficients_A(r.params(), ns, cfg);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const BigReal scale = BigReal::pi(192) * sqrt(BigReal(2L, 192)) * pow(BigReal(Rat(3, ns[i]), 192), 0.25);
      const BigReal c = abs(BigComplex{est[i].value, est[i].imag_residue}) / scale;
      const BigReal b = bound_C(r, ns[i], 192);
      ++compared;
      worst_ratio = std::max(worst_ratio, (c / b).to_double());
      if (!(c <= b)) above.push_back(r.label + " n=" + std::to_string(ns[i]));
    }
  }
  // (b) thresholds.
  PositivityConfig pc;
  pc.n_end = kScanEnd;
  const PositivityReport pr = positivity_scan(pc);
  std::size_t finite = 0;
  for (const auto& c : pr.characters) finite += c.n0 && *c.n0 <= kScanEnd;
  // (c) exact multiplicities.
  const ExactCheck ex = exact_multiplicities(cache());
  std::ostringstream d;
  d << "(a) " << (compared - above.size()) << "/" << compared << " truncated |C| under bound (max ratio " << worst_ratio
    << ")";
  if (!above.empty()) d << " above: " << join(above);
  d << "; (b) n0 finite for " << finite << "/" << pr.characters.size() << " characters, overall n0 = "
    << (pr.overall_n0 ? std::to_string(*pr.overall_n0) : "none") << " (published 375)";
  d << "; (c) n in [0, " << ex.n_hi << "]: " << (ex.nonnegative() ? "all >= 0" : "negative entries");
  if (!ex.trivial_positive()) {
    d << ", trivial multiplicity 0 at " << ex.trivial_zero.size() << " exponents (n <= " << ex.trivial_zero.back()
      << ")";
  }
  if (pr.overall_n0 && ex.n_hi + 1 < *pr.overall_n0) {
    d << ", exact check does not reach n0 (gap " << ex.n_hi + 1 << ".." << *pr.overall_n0 - 1 << ")";
  }
  const bool ok = above.empty() && finite == pr.characters.size() && ex.nonnegative() && ex.trivial_positive();
  return {ok, d.str()};
}

Verdict c11() {
  // Both full-scale results are out of reach here; confirm the substitutes are
  // what the cache actually holds and state the gap.
  const auto& s = cache().series("24CD");
  bool truncated = true;
  i64 c_max = 0;
  for (const auto& e : s) {
    truncated = truncated && e.prov.kind == Provenance::Kind::Truncated;
    c_max = std::max(c_max, e.prov.c_max);
  }
  const i64 B = common_B();
  std::ostringstream d;
  d << "24CD: " << s.size() << " coefficients to n = " << cache().covered_to("24CD") << ", all from truncation (c_max "
    << c_max << "), no exact eta-quotient route; congruences checked on n <= " << B
    << " instead of 10000; substituted by criteria 5, 6, 10";
  return {truncated && B < 10000, d.str()};
}

std::map<int, std::string> expected_verdicts() {
  std::map<int, std::string> out;
  std::ifstream in(data_dir() + "/acceptance_expected.txt");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int id;
    std::string v;
    if (ss >> id >> v) out[id] = v;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--strict") {
      strict = true;
    } else {
      only.push_back(std::stoi(a));
    }
  }
  const std::vector<Criterion> all{{1, 5, c1},    {2, 600, c2}, {3, 60, c3}, {4, 1, c4},  {5, 10, c5},  {6, 60, c6},
                                   {7, 0, c7},    {8, 300, c8}, {9, 0, c9},  {10, 600, c10}, {11, 0, c11}};
  const auto expected = expected_verdicts();
  bool all_pass = true, as_expected = true;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      v.pass = false;
      v.detail += "; over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit";
    }
    const std::string verdict = v.pass ? "PASS" : "FAIL";
    std::ostringstream t;
    t.precision(3);
    t << secs;
    std::cout << "criterion " << c.id << ": " << verdict << " [" << t.str() << " s] " << v.detail;
    auto it = expected.find(c.id);
    if (it != expected.end() && it->second != verdict) {
      as_expected = false;
      std::cout << " (UNEXPECTED, documented outcome " << it->second << ")";
    }
    std::cout << std::endl;
    all_pass = all_pass && v.pass;
  }
  std::cout << "all criteria pass: " << (all_pass ? "yes" : "no") << "; verdicts match documented outcomes: "
            << (as_expected ? "yes" : "no") << std::endl;
  return strict ? !all_pass : !as_expected;
}

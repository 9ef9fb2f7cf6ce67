#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "thompson/cache.hpp"
#include "thompson/chartable.hpp"
#include "thompson/replicability.hpp"

using namespace thompson;

namespace {

const CoeffCache& cache() {
  static const CoeffCache c = CoeffCache::read(data_dir() + "/reference_cache.txt");
  return c;
}

// Independent oracle: P_m(f) = q^-m + m sum_n H_{m,n} q^n for the m-th Faber
// polynomial P_m, built here by cancelling the polar part of f^m.
Rat h_via_faber(const QSeries& f, int m, int n, int order) {
  const QSeries ft = f.truncated(Rat(order));
  QSeries p = pow(ft, m);
  for (int k = m - 1; k >= 0; --k) {
    const Rat c = p.coeff(-k);
    if (c == 0) continue;
    p -= (k == 0 ? QSeries::monomial(c, Rat(0)) : pow(ft, k) * c);
  }
  return p.coeff(n) / m;
}

std::string scratch(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("thompson_" + name)).string();
}

}  // namespace

TEST_CASE("H-table of q^-1 vanishes") {
  const QSeries f = QSeries::monomial(1, Rat(-1), Rat(30));
  const BivariateSeries H = h_table(f, 10);
  for (int m = 1; m <= 10; ++m) {
    for (int n = 1; n <= 10; ++n) CHECK(H.at(m, n) == 0);
  }
  CHECK(is_replicable(H).ok());
}

TEST_CASE("H-table rejects bad input") {
  CHECK_THROWS(h_table(QSeries::monomial(1, Rat(-2), Rat(30)), 5));
  CHECK_THROWS(h_table(QSeries::monomial(2, Rat(-1), Rat(30)), 5));
  CHECK_THROWS(h_table(QSeries::monomial(1, Rat(-1), Rat(8)), 5));  // needs q^9
  CHECK_THROWS(h_table(QSeries::monomial(1, Rat(-1), Rat(30)) + QSeries::monomial(Rat(1, 2), Rat(3)), 5));
}

TEST_CASE("H-table of the 2B Hauptmodul") {
  const QSeries x = eta_expansion(EtaQuotient::parse("1^24/2^24"), Rat(45));
  const BivariateSeries H = h_table(x, 20);
  CHECK(H.symmetric());
  // Faber route as an independent oracle.
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) CHECK(H.at(m, n) == h_via_faber(x, m, n, 45));
  }
  CHECK(H.at(1, 1) == x.coeff(1));
  const ReplicabilityReport rep = is_replicable(H);
  CHECK(rep.ok());
  CHECK(rep.compared > 30);

  // Perturbing one coefficient breaks replicability.
  const QSeries y = x + QSeries::monomial(1, Rat(3));
  CHECK_FALSE(is_replicable(h_table(y, 20)).ok());
}

TEST_CASE("replicability gcd filter") {
  BivariateSeries H(6);
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) H.at(m, n) = 1;
  }
  H.at(2, 2) = 5;  // gcd 2 group for product 4 has only (2, 2)
  CHECK(is_replicable(H).ok());
  H.at(2, 3) = 7;  // (1, 6) and (2, 3) share gcd 1
  H.at(3, 2) = 7;
  const auto rep = is_replicable(H);
  REQUIRE(rep.violations.size() == 2);
  CHECK(rep.violations[0] == std::array<int, 4>{2, 3, 1, 6});
}

TEST_CASE("split series") {
  const QSeries F = QSeries::from_integer_terms({{-3, 2}, {0, 248}, {4, 54000}, {5, -171990}}, Rat(8));
  const auto [F0, F1] = split_series(F);
  CHECK(F0 == QSeries::from_integer_terms({{0, 248}, {4, 54000}}, Rat(8)));
  CHECK(F1 == QSeries::from_integer_terms({{-3, 2}, {5, -171990}}, Rat(8)));
  CHECK(F0 + F1 == F);
  const auto z = split_series(QSeries::zero(Rat(4)));
  CHECK(z.first.is_zero());
  CHECK(z.second.is_zero());
  CHECK_THROWS(split_series(QSeries::from_integer_terms({{2, 1}}, Rat(8))));
}

TEST_CASE("theta^(1) matches its eta quotient") {
  const QSeries direct = theta_half(Rat(40));
  QSeries eta = eta_expansion(EtaQuotient::parse("4^2/2"), Rat(40)) * Rat(2);
  CHECK(direct == eta);
  // F = q^-4 theta^(1)(4 tau) has t^(1) = q^-1 exactly.
  std::map<i64, Rat> terms;
  for (const auto& [e, c] : direct.terms()) terms[floor_of(e * 4).get_si() - 4] = c;
  const QSeries t = t_series(QSeries::from_integer_terms(terms, Rat(156)), 1);
  CHECK(*t.trunc_order() >= 38);
  CHECK(t.terms().size() == 1);
  CHECK(t.coeff(-1) == 1);
}

TEST_CASE("t-series of 1A") {
  const QSeries F = cache().as_qseries("1A");
  const QSeries t0 = t_series(F, 0), t1 = t_series(F, 1);
  CHECK(t0.coeff(0) == 248);
  CHECK(t1.coeff(-1) == 1);
  CHECK(t0.denom() == 1);
  CHECK(t1.valuation() == Rat(-1));
  CHECK_THROWS(t_series(F, 2));
}

TEST_CASE("shipped identities hold") {
  const auto ids = shipped_identities();
  CHECK(ids.size() == 63);
  std::size_t checked = 0;
  for (const auto& id : ids) {
    const IdentityCheck r = verify_identity(id, cache().as_qseries(id.label), 49, ids);
    CHECK_MESSAGE(r.ok, id.label << " " << id.component << " " << id.source);
    checked += r.ok;
  }
  CHECK(checked == ids.size());
}

TEST_CASE("identity rows needed by the acceptance check reach q^50") {
  const auto ids = shipped_identities();
  for (const auto& id : ids) {
    if (id.label != "1A" && id.label != "2A" && id.label != "3B" && id.label != "4A" && id.label != "4B" &&
        id.label != "6C") {
      continue;
    }
    const IdentityCheck r = verify_identity(id, cache().as_qseries(id.label), 50, ids);
    CHECK_MESSAGE(r.ok, id.label << " " << id.component << " checked to " << r.checked_to);
  }
}

TEST_CASE("printed rows that fail") {
  std::ofstream(scratch("printed_rows.txt")) << "12AB t0 1.4.18/2.9.36 | 2:1 | 1:1 -3:0\n24AB t 0 | 0:0 |\n";
  const auto ids = load_identities(scratch("printed_rows.txt"));
  const IdentityCheck a = verify_identity(ids[0], cache().as_qseries("12AB"), 49);
  CHECK_FALSE(a.ok);
  CHECK(a.first_mismatch == 1);
  CHECK(a.expected == "6");
  CHECK(a.got == "-6");
  const IdentityCheck b = verify_identity(ids[1], cache().as_qseries("24AB"), 49);
  CHECK_FALSE(b.ok);
  CHECK(b.first_mismatch == -1);
}

TEST_CASE("identity file errors") {
  std::ofstream(scratch("bad_rows.txt")) << "1A t2 1^8/4^8 | 1:1 |\n";
  CHECK_THROWS(load_identities(scratch("bad_rows.txt")));
  std::ofstream(scratch("bad_rows.txt")) << "1A t0 sum | |\n";
  CHECK_THROWS(load_identities(scratch("bad_rows.txt")));
  std::ofstream(scratch("bad_rows.txt")) << "1A t 1^8/4^8 | 1 |\n";
  CHECK_THROWS(load_identities(scratch("bad_rows.txt")));
  CHECK_THROWS(load_identities("no_such_file.txt"));
}

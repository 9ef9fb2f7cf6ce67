#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "thompson/chartable.hpp"

using namespace thompson;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string write_temp(const std::vector<std::string>& lines, const std::string& name) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  for (const auto& l : lines) out << l << "\n";
  return path;
}

}  // namespace

TEST_CASE("shipped table loads and passes both orthogonality relations") {
  const auto& t = CharacterTable::thompson();
  CHECK(t.size() == 48);
  CHECK(t.classes().front() == "1A");
  CHECK(t.classes().back() == "39B");
  CHECK(t.schur_check().ok);
  CHECK(t.schur_check().pairs_checked == 48 * 48);
  CHECK(t.column_check().ok);
}

TEST_CASE("derived class data") {
  const auto& t = CharacterTable::thompson();
  CHECK(t.group_order() == Int("90745943887872000"));
  CHECK(t.group_order() == Int(1) * (1 << 15) * 59049 * 125 * 49 * 13 * 19 * 31);
  for (std::size_t g = 0; g < t.size(); ++g) CHECK(t.group_order() % t.centralizer_order(g) == 0);
  CHECK(t.centralizer_order("39A") == t.centralizer_order("39B"));
  CHECK(t.conjugate_class(t.class_index("39A")) == t.class_index("39B"));
  CHECK(t.conjugate_class(t.class_index("1A")) == 0);
  std::vector<long> degrees{1, 248, 4123, 27000, 27000, 30628};
  for (std::size_t j = 0; j < degrees.size(); ++j) CHECK(t.value(j, 0) == QuadIm(degrees[j]));
  CHECK(t.value(1, 0) == QuadIm(248));
}

TEST_CASE("decomposition") {
  const auto& t = CharacterTable::thompson();
  std::vector<Rat> chi2(48), chi45(48), zero(48, Rat(0));
  for (std::size_t g = 0; g < 48; ++g) {
    chi2[g] = t.value(1, g).re();
    QuadIm s = t.value(3, g) + t.value(4, g);
    REQUIRE(s.is_rational());
    chi45[g] = s.re();
  }
  auto m = t.decompose(chi2, 0);
  for (std::size_t j = 0; j < 48; ++j) CHECK(m.m[j] == (j == 1 ? 1 : 0));
  m = t.decompose(chi45, 4);
  for (std::size_t j = 0; j < 48; ++j) CHECK(m.m[j] == ((j == 3 || j == 4) ? 1 : 0));
  m = t.decompose(zero, 5);
  for (const auto& x : m.m) CHECK(x == 0);
  // Rational-valued characters decompose to unit vectors.
  for (std::size_t k = 0; k < 48; ++k) {
    std::vector<Rat> w(48);
    bool rational = true;
    for (std::size_t g = 0; g < 48; ++g) {
      rational = rational && t.value(k, g).is_rational();
      w[g] = t.value(k, g).re();
    }
    if (!rational) continue;
    auto mk = t.decompose(w, 8);
    for (std::size_t j = 0; j < 48; ++j) CHECK(mk.m[j] == (j == k ? 1 : 0));
  }
}

TEST_CASE("loader rejects damaged tables") {
  auto lines = read_lines(data_dir() + "/thompson_characters.txt");
  // Duplicate a row.
  auto dup = lines;
  std::size_t x10 = 0, x9 = 0;
  for (std::size_t i = 0; i < dup.size(); ++i) {
    if (dup[i].rfind("X9:", 0) == 0) x9 = i;
    if (dup[i].rfind("X10:", 0) == 0) x10 = i;
  }
  dup[x10] = "X10:" + dup[x9].substr(3);
  CHECK_THROWS_WITH_AS(CharacterTable::load(write_temp(dup, "dup_chars.txt")), doctest::Contains("identical"),
                       std::runtime_error);
  // Flip one sign.
  auto bad = lines;
  auto pos = bad[x9].find("| ");
  bad[x9].insert(pos + 2, "-");
  CHECK_THROWS_AS(CharacterTable::load(write_temp(bad, "bad_chars.txt")), std::runtime_error);
  // Truncate.
  auto shortt = lines;
  shortt.pop_back();
  CHECK_THROWS_AS(CharacterTable::load(write_temp(shortt, "short_chars.txt")), std::runtime_error);
}

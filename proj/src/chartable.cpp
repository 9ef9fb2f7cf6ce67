#include "thompson/chartable.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thompson {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("THOMPSON_DATA_DIR"); env && *env) return env;
  return THOMPSON_DATA_DIR;
}

CharacterTable CharacterTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open character table " + path);
  CharacterTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(path, lineno, "expected 'key: value'");
    const std::string key = line.substr(0, colon);
    const std::string rest = line.substr(colon + 1);
    if (key == "classes") {
      t.classes_ = words(rest);
    } else if (key == "orders") {
      for (const auto& w : words(rest)) t.orders_.push_back(std::stol(w));
    } else if (!key.empty() && key[0] == 'X') {
      if (t.classes_.empty()) fail(path, lineno, "character row before class header");
      std::vector<QuadIm> row;
      for (const auto& cell : split(rest, '|')) {
        try {
          row.push_back(parse_quadim(cell));
        } catch (const std::exception& e) {
          fail(path, lineno, e.what());
        }
      }
      if (row.size() != t.classes_.size()) {
        fail(path, lineno, "row has " + std::to_string(row.size()) + " entries, expected " +
                               std::to_string(t.classes_.size()));
      }
      if (key != "X" + std::to_string(t.chars_.size() + 1)) fail(path, lineno, "rows out of order at " + key);
      t.chars_.push_back(std::move(row));
    } else {
      fail(path, lineno, "unknown key '" + key + "'");
    }
  }
  if (t.classes_.empty()) throw std::runtime_error(path + ": no class header");
  if (t.orders_.size() != t.classes_.size()) throw std::runtime_error(path + ": orders do not match classes");
  if (t.chars_.size() != t.classes_.size()) {
    throw std::runtime_error(path + ": " + std::to_string(t.chars_.size()) + " characters for " +
                             std::to_string(t.classes_.size()) + " classes");
  }
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!(t.chars_[0][j] == QuadIm(1))) throw std::runtime_error(path + ": first row is not the trivial character");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t k = i + 1; k < t.size(); ++k) {
      if (t.chars_[i] == t.chars_[k]) {
        throw std::runtime_error(path + ": rows X" + std::to_string(i + 1) + " and X" + std::to_string(k + 1) +
                                 " are identical (transcription error)");
      }
    }
  }
  t.derive();
  SchurReport rep = t.schur_check();
  if (!rep.ok) throw std::runtime_error(path + ": Schur orthogonality fails: " + rep.failures.front());
  return t;
}

void CharacterTable::derive() {
  const std::size_t n = size();
  centralizers_.assign(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    Rat s = 0;
    for (std::size_t j = 0; j < n; ++j) s += norm(chars_[j][g]);
    if (!is_integer(s) || s <= 0) throw std::runtime_error("column norm of " + classes_[g] + " is not a positive integer");
    centralizers_[g] = s.get_num();
  }
  conj_class_.assign(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n && conj_class_[g] == n; ++h) {
      bool match = true;
      for (std::size_t j = 0; j < n && match; ++j) match = chars_[j][h] == conj(chars_[j][g]);
      if (match) conj_class_[g] = h;
    }
    if (conj_class_[g] == n) throw std::runtime_error("no conjugate column for class " + classes_[g]);
  }
}

std::size_t CharacterTable::class_index(const std::string& label) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == label) return i;
  }
  throw std::out_of_range("unknown class " + label);
}

SchurReport CharacterTable::schur_check() const {
  SchurReport rep;
  const std::size_t n = size();
  std::vector<Int> sizes(n);
  for (std::size_t g = 0; g < n; ++g) sizes[g] = class_size(g);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      QuadSum s;
      for (std::size_t g = 0; g < n; ++g) s += chars_[i][g] * conj(chars_[j][g]) * QuadIm(Rat(sizes[g]));
      ++rep.pairs_checked;
      Rat expect = i == j ? Rat(group_order()) : Rat(0);
      if (!s.is_rational() || s.rational_part() != expect) {
        rep.ok = false;
        rep.failures.push_back("(X" + std::to_string(i + 1) + ", X" + std::to_string(j + 1) + ") = " +
                               s.residue_description() + ", expected " + to_string(expect));
      }
    }
  }
  return rep;
}

SchurReport CharacterTable::column_check() const {
  SchurReport rep;
  const std::size_t n = size();
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      QuadSum s;
      for (std::size_t j = 0; j < n; ++j) s += chars_[j][g] * conj(chars_[j][h]);
      ++rep.pairs_checked;
      Rat expect = g == h ? Rat(centralizers_[g]) : Rat(0);
      if (!s.is_rational() || s.rational_part() != expect) {
        rep.ok = false;
        rep.failures.push_back("columns (" + classes_[g] + ", " + classes_[h] + ") = " + s.residue_description());
      }
    }
  }
  return rep;
}

MultiplicityVector CharacterTable::decompose(const std::vector<Rat>& omega, long n) const {
  if (omega.size() != size()) throw std::invalid_argument("class function has wrong length");
  MultiplicityVector mv;
  mv.n = n;
  const Rat sign = (n % 2 == 0) ? 1 : -1;
  for (std::size_t j = 0; j < size(); ++j) {
    QuadSum s;
    for (std::size_t g = 0; g < size(); ++g) {
      if (omega[g] == 0) continue;
      Rat w = sign * omega[g] / Rat(centralizers_[g]);
      s += conj(chars_[j][g]) * QuadIm(w);
    }
    mv.m.push_back(s.to_rational());
  }
  return mv;
}

const CharacterTable& CharacterTable::thompson() {
  static const CharacterTable table = load(data_dir() + "/thompson_characters.txt");
  return table;
}

}  // namespace thompson

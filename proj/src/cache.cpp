#include "thompson/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "thompson/chartable.hpp"
#include "thompson/rademacher.hpp"

namespace thompson {

std::string Provenance::to_string() const {
  if (kind == Kind::Ingested) return "ingested";
  return "truncated:c_max=" + std::to_string(c_max) + ":prec=" + std::to_string(precision);
}

Provenance Provenance::parse(const std::string& text) {
  Provenance p;
  if (text == "ingested") {
    p.kind = Kind::Ingested;
    return p;
  }
  long long c = 0;
  int prec = 0;
  if (std::sscanf(text.c_str(), "truncated:c_max=%lld:prec=%d", &c, &prec) != 2 || c < 1 || prec < 1) {
    throw std::invalid_argument("bad provenance '" + text + "'");
  }
  p.c_max = c;
  p.precision = prec;
  return p;
}

void CoeffCache::set_series(const std::string& label, std::vector<CacheEntry> entries) {
  if (entries.empty() || entries.front().exponent != -3 || entries.front().coeff != 2) {
    throw std::invalid_argument(label + ": cache series must start with (-3, 2)");
  }
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].exponent <= entries[i - 1].exponent) {
      throw std::invalid_argument(label + ": exponents must increase strictly");
    }
  }
  series_[label] = std::move(entries);
}

const std::vector<CacheEntry>& CoeffCache::series(const std::string& label) const {
  auto it = series_.find(label);
  if (it == series_.end()) throw std::out_of_range("cache has no series " + label);
  return it->second;
}

std::vector<std::string> CoeffCache::labels() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : series_) out.push_back(k);
  return out;
}

std::optional<Int> CoeffCache::coeff(const std::string& label, i64 exponent) const {
  auto it = series_.find(label);
  if (it == series_.end()) return std::nullopt;
  for (const auto& e : it->second) {
    if (e.exponent == exponent) return e.coeff;
  }
  return std::nullopt;
}

i64 CoeffCache::covered_to(const std::string& label) const {
  const auto& s = series(label);
  i64 next = 0;
  for (const auto& e : s) {
    if (e.exponent < 0) continue;
    if (e.exponent != next) break;
    next += (next % 4 == 0) ? 1 : 3;
  }
  // next is the first missing plus-space exponent
  if (next == 0) return -1;
  return next - (next % 4 == 0 ? 3 : 1);
}

QSeries CoeffCache::as_qseries(const std::string& label) const {
  const i64 B = covered_to(label);
  std::map<i64, Rat> terms;
  for (const auto& e : series(label)) {
    if (e.exponent <= B && e.coeff != 0) terms[e.exponent] = Rat(e.coeff);
  }
  return QSeries::from_integer_terms(terms, Rat(B + 1));
}

std::string CoeffCache::serialize() const {
  std::ostringstream out;
  out << "version " << kVersion << "\n";
  // table order first, anything else afterwards
  std::vector<std::string> order;
  for (const auto& r : class_records()) {
    if (series_.count(r.label)) order.push_back(r.label);
  }
  for (const auto& [label, entries] : series_) {
    if (std::find(order.begin(), order.end(), label) == order.end()) order.push_back(label);
  }
  for (const auto& label : order) {
    const auto& entries = series_.at(label);
    for (const auto& e : entries) {
      out << label << ' ' << e.exponent << ' ' << e.coeff.get_str() << ' ' << e.prov.to_string() << '\n';
    }
  }
  return out.str();
}

CoeffCache CoeffCache::parse(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_version = false;
  std::map<std::string, std::vector<CacheEntry>> raw;
  std::vector<std::string> order;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, c, d;
    ls >> a >> b;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (!have_version) {
      if (a != "version" || b != std::to_string(kVersion)) throw std::runtime_error(where + "expected 'version 1'");
      have_version = true;
      continue;
    }
    ls >> c >> d;
    if (d.empty()) throw std::runtime_error(where + "expected 'label exponent coefficient provenance'");
    CacheEntry e;
    try {
      e.exponent = std::stoll(b);
      e.coeff = Int(c);
      e.prov = Provenance::parse(d);
    } catch (const std::exception& ex) {
      throw std::runtime_error(where + ex.what());
    }
    if (!raw.count(a)) order.push_back(a);
    raw[a].push_back(std::move(e));
  }
  if (!have_version) throw std::runtime_error(source + ": empty cache");
  CoeffCache cache;
  for (const auto& label : order) {
    try {
      cache.set_series(label, std::move(raw[label]));
    } catch (const std::exception& ex) {
      throw std::runtime_error(source + ": " + ex.what());
    }
  }
  return cache;
}

void CoeffCache::write(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << serialize();
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot move cache into " + path);
}

CoeffCache CoeffCache::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cache " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::string default_cache_path() {
  if (const char* env = std::getenv("THOMPSON_CACHE_DIR"); env && *env) return std::string(env) + "/reference_cache.txt";
  return data_dir() + "/reference_cache.txt";
}

}  // namespace thompson

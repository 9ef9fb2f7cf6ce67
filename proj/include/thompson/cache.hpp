#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thompson/numerics.hpp"
#include "thompson/qseries.hpp"

namespace thompson {

struct Provenance {
  enum class Kind { Truncated, Ingested };
  Kind kind = Kind::Truncated;
  i64 c_max = 0;
  int precision = 0;

  // "truncated:c_max=10000:prec=128" or "ingested"
  std::string to_string() const;
  static Provenance parse(const std::string& text);
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CacheEntry {
  i64 exponent = 0;
  Int coeff;
  Provenance prov;
  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

// Integer coefficients of the series F_[g], keyed by series label. Text form:
//   version 1
//   <label> <exponent> <coefficient> <provenance>
class CoeffCache {
 public:
  static constexpr int kVersion = 1;

  // Exponents must increase strictly and start with (-3, 2).
  void set_series(const std::string& label, std::vector<CacheEntry> entries);
  bool has(const std::string& label) const { return series_.count(label) != 0; }
  const std::vector<CacheEntry>& series(const std::string& label) const;
  std::vector<std::string> labels() const;
  std::optional<Int> coeff(const std::string& label, i64 exponent) const;
  // Largest B such that every plus-space exponent 0 <= n <= B is present
  // (-1 when n = 0 is missing).
  i64 covered_to(const std::string& label) const;
  // F truncated after covered_to.
  QSeries as_qseries(const std::string& label) const;

  std::string serialize() const;
  static CoeffCache parse(const std::string& text, const std::string& source = "<cache>");
  void write(const std::string& path) const;
  static CoeffCache read(const std::string& path);

  friend bool operator==(const CoeffCache&, const CoeffCache&) = default;

 private:
  std::map<std::string, std::vector<CacheEntry>> series_;
};

// $THOMPSON_CACHE_DIR/reference_cache.txt, defaulting to the data directory.
std::string default_cache_path();

}  // namespace thompson

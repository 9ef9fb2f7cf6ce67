#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "commands.hpp"
#include "thompson/cache.hpp"
#include "thompson/rademacher.hpp"

namespace thompson::cli {

void RunConfig::validate() const {
  if (c_max < 0) throw std::invalid_argument("--c-max must be positive (or 'auto')");
  if (precision < 53) throw std::invalid_argument("--precision must be at least 53");
  if (n_max < 0) throw std::invalid_argument("--n-max must be non-negative");
  if (!(threshold > 0 && threshold < 0.5)) throw std::invalid_argument("--threshold must lie in (0, 0.5)");
  if (jobs < 0) throw std::invalid_argument("--jobs must be non-negative");
  if (format != "json" && format != "csv") throw std::invalid_argument("--format must be json or csv");
}

nlohmann::json RunConfig::fingerprint() const {
  return {{"c_max", c_max == 0 ? nlohmann::json("auto") : nlohmann::json(c_max)},
          {"precision", precision},
          {"n_max", n_max},
          {"threshold", threshold},
          {"cache", cache_path}};
}

i64 auto_c_max(i64 N) {
  const double target = 0.025;
  const double c = std::ceil(std::pow(22.0 / (static_cast<double>(N) * target), 2));
  return std::max<i64>(10000, static_cast<i64>(c));
}

std::vector<std::string> resolve_classes(const std::string& spec) {
  std::vector<std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      for (const auto& r : class_records()) out.push_back(r.label);
      continue;
    }
    out.push_back(class_record(item).label);
  }
  if (out.empty()) throw std::invalid_argument("no classes given");
  return out;
}

Report cmd_compute(const std::vector<std::string>& classes, const std::vector<i64>& exponents, const RunConfig& cfg) {
  cfg.validate();
  for (i64 n : exponents) {
    if (n < 0 || (n % 4 != 0 && n % 4 != 1)) {
      throw std::invalid_argument("exponent " + std::to_string(n) + " is outside the plus-space support (n = 0, 1 mod 4)");
    }
  }
  Report rep;
  rep.body["command"] = "compute";
  rep.body["config"] = cfg.fingerprint();
  CoeffCache cache;
  if (std::filesystem::exists(cfg.cache_path)) cache = CoeffCache::read(cfg.cache_path);

  for (const auto& label : classes) {
    const ClassRecord& r = class_record(label);
    TruncationConfig tc;
    tc.c_max = cfg.c_max == 0 ? auto_c_max(r.order) : cfg.c_max;
    tc.precision = cfg.precision;
    tc.threshold = cfg.threshold;
    tc.threads = cfg.jobs;
    tc.doubling_check = cfg.doubling;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<i64> ns = exponents.empty() ? plus_space_exponents(cfg.n_max) : exponents;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    const auto est = coefficients_A(r.params(), ns, tc);
    // Same assembly as series_F, on an explicit exponent list.
    std::vector<CacheEntry> entries{{-3, Int(2), {Provenance::Kind::Truncated, tc.c_max, tc.precision}}};
    nlohmann::json unconverged = nlohmann::json::array();
    double max_distance = 0, max_delta = 0, max_imag = 0;
    for (const auto& e : est) {
      const BigReal f = e.value * 2.0 + BigReal(r.theta_term(e.n), tc.precision);
      const double dist = distance_to_integer(f).to_double();
      const double delta = e.doubling_delta.value_or(0.0);
      max_distance = std::max(max_distance, dist);
      max_delta = std::max(max_delta, delta);
      max_imag = std::max(max_imag, e.imag_residue.to_double());
      const bool stable = !e.doubling_delta || 2 * delta + dist < 0.5;
      if (dist > cfg.threshold || !e.precision_ok || !stable) {
        unconverged.push_back({{"n", e.n}, {"value", f.to_string(30)}, {"distance", dist},
                               {"doubling_delta", delta}, {"precision_ok", e.precision_ok}});
        continue;
      }
      entries.push_back({e.n, f.round_to_integer(), {Provenance::Kind::Truncated, tc.c_max, tc.precision}});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // Keep previously cached exponents that this run did not touch.
    if (cache.has(r.label)) {
      std::map<i64, CacheEntry> merged;
      for (const auto& e : cache.series(r.label)) merged[e.exponent] = e;
      for (i64 n : ns) merged.erase(n);
      for (const auto& e : entries) merged[e.exponent] = e;
      entries.clear();
      for (auto& [k, e] : merged) entries.push_back(std::move(e));
    }
    cache.set_series(r.label, entries);
    rep.body["series"].push_back({{"label", r.label},
                                  {"c_max", tc.c_max},
                                  {"precision", tc.precision},
                                  {"exponents", ns.size()},
                                  {"max_distance", max_distance},
                                  {"max_doubling_delta", max_delta},
                                  {"max_imag_residue", max_imag},
                                  {"tail_estimate", tail_estimate(r.order, tc.c_max)},
                                  {"unconverged", unconverged},
                                  {"seconds", secs}});
    if (!unconverged.empty()) rep.exit_code = kUnconverged;
  }
  cache.write(cfg.cache_path);
  rep.body["cache_written"] = cfg.cache_path;
  return rep;
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return r.body.dump(2) + "\n";
  std::ostringstream out;
  const auto& checks = r.body.contains("checks") ? r.body["checks"] : r.body.value("series", nlohmann::json::array());
  std::vector<std::string> cols;
  for (const auto& c : checks) {
    for (const auto& [k, v] : c.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& c : checks) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "," : "");
      if (!c.contains(cols[i])) continue;
      const auto& v = c[cols[i]];
      std::string s = v.is_string() ? v.get<std::string>() : v.dump();
      if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        s = q + "\"";
      }
      out << s;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace thompson::cli

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "thompson/arith.hpp"
#include "thompson/positivity.hpp"

namespace thompson::cli {

enum ExitCode { kPass = 0, kFailure = 1, kDataGap = 2, kUnconverged = 3 };

struct RunConfig {
  // 0 picks a per-series truncation from the tail heuristic.
  i64 c_max = 10000;
  int precision = 128;
  i64 n_max = 48;
  double threshold = 0.1;
  int jobs = 0;
  std::string format = "json";
  std::string cache_path;
  bool doubling = true;

  void validate() const;
  nlohmann::json fingerprint() const;
};

struct Report {
  int exit_code = kPass;
  nlohmann::json body;
};

// Per-series truncation used when RunConfig::c_max is 0: smallest c_max with
// tail estimate <= 0.025, at least 10^4.
i64 auto_c_max(i64 N);

// Series labels for a comma-separated list ("all", series or class labels).
std::vector<std::string> resolve_classes(const std::string& spec);

Report cmd_compute(const std::vector<std::string>& classes, const std::vector<i64>& exponents, const RunConfig& cfg);
Report cmd_verify(const std::string& suite, const RunConfig& cfg);
Report cmd_positivity(const RunConfig& cfg, const PositivityConfig& pcfg);

// JSON as-is, or the "checks" array flattened to CSV.
std::string render(const Report& r, const std::string& format);

}  // namespace thompson::cli

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "thompson/cache.hpp"
#include "thompson/pipeline.hpp"

using namespace thompson;

int main(int argc, char** argv) {
  CLI::App app{"Thompson moonshine coefficients and checks"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string c_max = "10000";
  std::string classes = "all";
  std::vector<i64> exponents;
  std::string output;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--c-max", c_max, "truncation of the c-sum, or 'auto' for a per-series choice");
    sub->add_option("--precision", cfg.precision, "MPFR precision in bits");
    sub->add_option("--n-max", cfg.n_max, "largest exponent");
    sub->add_option("--threshold", cfg.threshold, "largest accepted distance to an integer");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0: OpenMP default)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--cache", cfg.cache_path, "coefficient cache (default $THOMPSON_CACHE_DIR/reference_cache.txt)");
    sub->add_option("--output,-o", output, "write the report here instead of stdout");
  };

  CLI::App* compute = app.add_subcommand("compute", "evaluate F_[g] coefficients and store them in the cache");
  common(compute);
  compute->add_option("--classes", classes, "comma-separated series or class labels, or 'all'");
  compute->add_option("--exponents", exponents, "explicit exponents instead of 0..n-max");
  compute->add_flag("!--no-doubling", cfg.doubling, "skip the c_max/2 stability check");

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("suite", suite, "relations, congruences, pipeline, replicability or orthogonality")
      ->required()
      ->check(CLI::IsMember({"relations", "congruences", "pipeline", "replicability", "orthogonality"}));

  CLI::App* positivity = app.add_subcommand("positivity", "positivity thresholds and exact-range verdicts");
  common(positivity);
  PositivityConfig pcfg;
  positivity->add_option("--n-start", pcfg.n_start, "first exponent of the bound scan (>= 40)");
  positivity->add_option("--n-end", pcfg.n_end, "last exponent of the bound scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cfg.c_max = c_max == "auto" ? 0 : std::stoll(c_max);
    if (cfg.cache_path.empty()) cfg.cache_path = default_cache_path();
    cli::Report rep;
    if (*compute) {
      rep = cli::cmd_compute(cli::resolve_classes(classes), exponents, cfg);
    } else if (*verify) {
      rep = cli::cmd_verify(suite, cfg);
    } else {
      pcfg.precision = cfg.precision;
      pcfg.threads = cfg.jobs;
      rep = cli::cmd_positivity(cfg, pcfg);
    }
    const std::string text = cli::render(rep, cfg.format);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream(output) << text;
    }
    return rep.exit_code;
  } catch (const DataGap& e) {
    std::cerr << "data gap: " << e.what() << "\n";
    return cli::kDataGap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kFailure;
  }
}

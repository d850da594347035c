#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "quelab/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitStartup = 1;

int threads_from_env() {
  const char* v = std::getenv("QUELAB_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    std::cerr << "quelab: QUELAB_THREADS must be an integer in [1, 1024]\n";
    std::exit(kExitConfig);
  }
  return static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shrinking-ball mass experiments for Eisenstein series"};
  app.require_subcommand(1);
  std::string config_path, out_path, jsonl_path;
  int threads = 0;
  long long seed = -1;
  bool timing = false;
  for (const char* name : {"omega-scan", "qe-scan", "variance", "moments", "selberg-check", "eval"}) {
    auto* sub = app.add_subcommand(name, std::string("run a ") + name + " experiment");
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_path, "CSV output path")->required();
    sub->add_option("--threads", threads, "worker threads (default: QUELAB_THREADS or 1)")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--seed", seed, "overrides experiment.seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--jsonl", jsonl_path, "JSON lines mirror of the table");
    sub->add_flag("--timing", timing, "fill the wall_time_ms column");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const std::string subcommand = app.get_subcommands().front()->get_name();
  if (threads == 0) threads = threads_from_env();

  quelab::ExperimentConfig config;
  try {
    config = quelab::load_config(config_path);
    const quelab::ExperimentKind kind = quelab::parse_kind(subcommand);
    // An explicit kind in the file must agree with the subcommand.
    if (config.kind_given && config.kind != kind) {
      throw quelab::UsageError("experiment.kind: config says " + quelab::kind_name(config.kind) +
                               " but the subcommand is " + subcommand);
    }
    config.kind = kind;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    config.validate();
  } catch (const quelab::UsageError& e) {
    std::cerr << "quelab: " << e.what() << '\n';
    return kExitConfig;
  }

  std::vector<quelab::ResultRow> rows;
  try {
    rows = quelab::run_experiment(config, threads);
  } catch (const std::exception& e) {
    std::cerr << "quelab: startup failed: " << e.what() << '\n';
    return kExitStartup;
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "quelab: cannot write '" << out_path << "'\n";
    return kExitConfig;
  }
  quelab::write_csv(out, rows, timing);
  if (!jsonl_path.empty()) {
    std::ofstream js(jsonl_path, std::ios::binary);
    if (!js) {
      std::cerr << "quelab: cannot write '" << jsonl_path << "'\n";
      return kExitConfig;
    }
    quelab::write_jsonl(js, rows, config, timing);
  }
  const std::size_t failed = quelab::failed_rows(rows);
  if (failed > 0) std::cerr << "quelab: " << failed << " of " << rows.size() << " rows failed\n";
  return 2 * failed > rows.size() ? kExitNumeric : 0;
}

#include "invsub/errors.hpp"
#include "invsub/tools/experiments.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <functional>
#include <map>

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  unsigned threads = 0;
  bool threads_set = false;
};

using Runner = std::function<std::vector<std::filesystem::path>(const invsub::tools::ExperimentConfig&)>;

int run(const std::string& name, const Options& o, const Runner& runner) {
  auto cfg = o.config.empty() ? invsub::tools::parse_config("", name) : invsub::tools::load_config(o.config, name);
  if (o.seed) cfg.seed = o.seed;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.format.empty()) cfg.format = o.format;
  if (o.threads_set) cfg.threads = o.threads;
  cfg.require_seed();
  for (const auto& p : runner(cfg)) fmt::print("{}\n", p.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulation of inverse subordinators and time-changed processes"};
  app.require_subcommand(1);
  const std::map<std::string, std::pair<std::string, Runner>> commands = {
      {"paths", {"trajectories of (L, gamma, Gamma) and time-changed processes", invsub::tools::run_paths}},
      {"web", {"time-averaged MSD and weak ergodicity breaking", invsub::tools::run_web}},
      {"strong-error", {"Euler-Maruyama strong error against exact solutions", invsub::tools::run_strong_error}},
      {"benchmark", {"wall time and operation counters of first-passage samplers", invsub::tools::run_benchmark}},
      {"validate", {"two-sample KS of exact samplers against a path-inversion oracle",
                    invsub::tools::run_oracle_validation}},
  };
  std::map<std::string, Options> opts;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    auto& o = opts[name];
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "seed (overrides the config)");
    sub->add_option("--out", o.out, "output directory (overrides the config)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "worker threads, 0 = hardware concurrency")
        ->each([&o](const std::string&) { o.threads_set = true; });
  }
  CLI11_PARSE(app, argc, argv);
  try {
    for (const auto& [name, entry] : commands)
      if (app.got_subcommand(name)) return run(name, opts[name], entry.second);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}

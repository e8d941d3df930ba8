#pragma once

#include "invsub/first_passage.hpp"
#include "invsub/sde.hpp"
#include "invsub/stats.hpp"
#include "invsub/tools/config.hpp"
#include "invsub/tools/output.hpp"

#include <filesystem>
#include <vector>

namespace invsub::tools {

// Each experiment has a compute step returning tables and a JSON summary, and a
// run step that validates and writes them under cfg.out_dir.
struct ExperimentOutput {
  std::vector<std::pair<Table, std::vector<std::string>>> tables;  // table, schema
  nlohmann::json summary = nlohmann::json::object();
};

std::vector<std::filesystem::path> write_output(const ExperimentOutput& out, const ExperimentConfig& cfg);

// Trajectories of (L, gamma, Gamma) and optionally a time-changed process.
ExperimentOutput compute_paths(const ExperimentConfig& cfg);

struct WebCell {
  double t, T;
  std::size_t n;  // replicas
  double mean, ci_lo, ci_hi;
};

struct WebReport {
  std::vector<WebCell> cells;
  std::vector<std::vector<double>> samples;  // per cell, one TAMSD per replica
  double msd_time = 0.0;
  double msd_mean = 0.0, msd_ci = 0.0;
  std::size_t msd_n = 0;
  stats::LinearFit fit_T{};  // log mean vs log T at the base lag, smallest decade excluded
  double exponent_T = 0.0;
  double C_alpha = 0.0;
  stats::LinearFit fit_t{};  // log mean vs log lag at the largest T; slope NaN with one lag
  double slope_t = 0.0;
};

WebReport compute_web_report(const ExperimentConfig& cfg);
ExperimentOutput compute_web(const ExperimentConfig& cfg);

struct StrongErrorReport {
  double h = 0.0;
  double planned_h = 0.0;
  double epsilon = 0.0;
  std::vector<sde::StrongErrorSample> samples;
  double fraction_below = 0.0;
};

StrongErrorReport compute_strong_error_report(const ExperimentConfig& cfg);

struct StrongOrderReport {
  std::vector<double> h;
  std::vector<double> mean_sq_sup_error;
  stats::LinearFit fit{};
};

StrongOrderReport compute_strong_order_report(const ExperimentConfig& cfg);
ExperimentOutput compute_strong_error(const ExperimentConfig& cfg);

struct BenchmarkCell {
  double param;
  std::vector<double> wall_ns;  // per repetition
  std::vector<double> ops;      // per repetition, summed over the M draws
  double frak_c = 0.0;
  double bound = 0.0;           // per draw, with const(zeta) from the pilot cell
  double mean_ops_per_draw = 0.0;
  bool within = false;
  bool slow = false;
};

struct BenchmarkReport {
  int setup = 1;
  std::size_t draws = 0;
  double const_zeta = 1.0;
  double pilot_param = 0.0;
  std::vector<BenchmarkCell> cells;
};

BenchmarkReport compute_benchmark_report(const ExperimentConfig& cfg);
ExperimentOutput compute_benchmark(const ExperimentConfig& cfg);

struct OracleReport {
  std::size_t N = 0;
  double step = 0.0;
  stats::TestResult L{}, gamma{}, Gamma{};
};

OracleReport compute_oracle_report(const ExperimentConfig& cfg);
ExperimentOutput compute_oracle_validation(const ExperimentConfig& cfg);

std::vector<std::filesystem::path> run_paths(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_web(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_strong_error(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_benchmark(const ExperimentConfig& cfg);
std::vector<std::filesystem::path> run_oracle_validation(const ExperimentConfig& cfg);

}  // namespace invsub::tools

#pragma once

#include "invsub/levy.hpp"
#include "invsub/processes.hpp"
#include "invsub/sde.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace invsub::montecarlo {

using processes::ClockKind;

struct FunctionalSpec {
  std::function<double(std::span<const Eigen::VectorXd>)> u;
  double growth_p = 0.0;
  std::optional<double> lipschitz_Cu;
};

struct McEstimate {
  double mean = 0.0;
  double sample_variance = 0.0;
  double third_abs_moment = 0.0;  // plug-in E|u - mean|^3
  std::size_t N = 0;
  double conf_level = 0.95;
  double ci_halfwidth = 0.0;
  double h = 0.0;  // 0 for exact estimators
  std::optional<double> berry_esseen_bound;
  std::optional<double> l2_budget;
  std::optional<processes::MomentReport> authorization;
  std::vector<double> replicas;
};

// Replica i uses make_stream(seed, i); results do not depend on threads.
// threads = 0 picks the hardware concurrency.
std::vector<double> run_replicas(std::size_t N, std::uint64_t seed, unsigned threads,
                                 const std::function<double(std::size_t, Rng&)>& replica);

McEstimate summarize(std::vector<double> values, double conf_level = 0.95, double psi_third_norm = 1.0);

double z_value(double conf_level);
double ci_halfwidth(double variance, std::size_t N, double conf_level);

McEstimate estimate_exact(const FunctionalSpec& f, const processes::FellerSpec& spec, const levy::LevyModel& model,
                          ClockKind kind, std::span<const double> grid, std::size_t N, std::uint64_t seed,
                          double conf_level = 0.95, unsigned threads = 0);

// Smallest integer N > variance z^2 / eps^2, at least 2.
std::size_t choose_N(double target_eps, double variance_bound, double conf_level);
std::size_t choose_N_z(double target_eps, double variance_bound, double z);

inline constexpr double kBerryEsseenConstant = 0.43262818693428845;  // (1 + 2 sqrt(2/pi)) / 6
double berry_esseen_bound(double rho, double sigma2, std::size_t N, double psi_third_norm);

// v = sup|u|^2 + 4 C n max(script C_1, c01) exp_moment
double variance_bound(double sup_u_sq, double C, std::size_t n, const sde::ErrorConstants& k, double exp_moment);
// sup of |u|^2 over |x_i| <= radius by grid search (d n <= 3) or seeded random search
double sup_u_squared(const FunctionalSpec& f, int d, std::size_t n, double radius, std::uint64_t seed = 1);

struct BudgetInputs {
  double sup_u_sq = 0.0;
  double C = 1.0;  // caller-calibrated constant of the variance bound
};

McEstimate estimate_em(const FunctionalSpec& f, const sde::SdeModel& model, const levy::LevyModel& levy,
                       ClockKind kind, std::span<const double> grid, std::size_t N, double h, std::uint64_t seed,
                       const BudgetInputs& budget = {}, double conf_level = 0.95, unsigned threads = 0);

double l2_budget(double v, std::size_t N, double Cu, const sde::ErrorConstants& k, double exp_moment, double h,
                 double gamma_hoelder);

struct Schedule {
  std::size_t N;
  double h;
};
// N = ceil((v + Cu sqrt(script C_1 exp_moment)) / eps); h = N^delta with the
// default delta = -2 / min(2 gamma, 1). delta >= -1 is rejected.
Schedule schedule_h_N(double target_eps, std::optional<double> delta, double gamma_hoelder,
                      const sde::ErrorConstants& k, double exp_moment, double Cu, double v);

struct NormalityReport {
  double statistic;
  double p_value;
  bool pass;
  std::size_t batches;
};
NormalityReport clt_diagnostic(std::span<const double> batch_means, double significance = 0.01);

}  // namespace invsub::montecarlo

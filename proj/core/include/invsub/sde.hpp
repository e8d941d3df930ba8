#pragma once

#include "invsub/levy.hpp"
#include "invsub/processes.hpp"
#include "invsub/rng.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace invsub::sde {

using processes::ClockKind;

// dX = a(t,X) dt + b(t,X) dW with W an m-dimensional Brownian motion.
struct SdeModel {
  int d = 1;
  int m = 1;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> a;
  std::function<Eigen::MatrixXd(double, const Eigen::VectorXd&)> b;
  double K = 1.0;              // Lipschitz / linear-growth constant
  double gamma_hoelder = 1.0;  // time-Hoelder exponent
  Eigen::VectorXd x0;
  double x0_second_moment = 0.0;  // E|X_0|^2

  // dX = rate (mean - X) dt + vol dW
  static SdeModel ornstein_uhlenbeck(double rate, double mean, double vol, double x0, double K);
  // dX = X/(1+t) dt + theta X dW, solved by X_0 (1+t) exp(theta W_t - theta^2 t/2)
  static SdeModel linear_growth(double theta, double x0, double K);

  void validate() const;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct ErrorConstants {
  double c1;
  double c01;
  double C1_BDG;
  double A;
  double C1;  // script C_1
  double C2;  // script C_2
};

inline constexpr double kBdgConstant = 1.30693;

ErrorConstants compute_constants(const SdeModel& model);
// c_n = 4 n d (K + m K^2/2 + (n-1) d m K^2)
double c_n(const SdeModel& model, int n);
// E|X_t|^2 <= c01 e^{2 c1 t}
double moment_bound(const ErrorConstants& k, double t);
// E|X_t - X_s|^2 <= 4 (1+m^2)(1+c01) d K^2 e^{2 c1 t} h for |t-s| <= h
double increment_bound(const SdeModel& model, const ErrorConstants& k, double t, double h);

// Scheme on an increasing grid starting at 0. dW[i] is the increment over
// (grid[i], grid[i+1]) and must have m entries.
std::vector<Eigen::VectorXd> euler_maruyama(const SdeModel& model, std::span<const double> grid,
                                            std::span<const Eigen::VectorXd> dW);
std::vector<Eigen::VectorXd> euler_maruyama(const SdeModel& model, std::span<const double> grid, Rng& rng);

struct ExpMomentBound {
  double value;
  double C3;  // 0 when not used
};

// E exp(c L_t) <= 1 + e^{C3 t}/(phi(C3) - c), minimised over C3.
ExpMomentBound exp_moment_inverse(const levy::LevyModel& model, double c, double t);
// Same bound with C3 fixed by phi(C3) - c = gap.
ExpMomentBound exp_moment_inverse_fixed_gap(const levy::LevyModel& model, double c, double t, double gap);
double exp_moment_undershoot(double c, double t);
// e^{ct}(e^{c max(1,t)} + M(c) u((0,t])); InapplicableError when M(c) is infinite.
double exp_moment_overshoot(const levy::LevyModel& model, double c, double t);
double exp_moment(const levy::LevyModel& model, ClockKind kind, double c, double t);

// Largest h in (0,1) with C1 * exp_moment * h^{min(2 gamma, 1)} <= epsilon.
double choose_step(const ErrorConstants& k, double exp_moment, double gamma_hoelder, double epsilon);

double strong_error_bound(const ErrorConstants& k, const levy::LevyModel& model, ClockKind kind, double t,
                          double h, double gamma_hoelder);

struct StepPlan {
  double h;
  double epsilon;
  double exp_moment;
  double bound;
  ErrorConstants constants;
};
StepPlan plan_step(const SdeModel& model, const levy::LevyModel& levy, ClockKind kind, double t, double epsilon);

inline constexpr std::size_t kMaxGridNodes = 100'000'000;

// {0, h, 2h, ..., kh} with kh >= max(extra), merged with extra; sorted, duplicates removed.
std::vector<double> merged_grid(double h, std::span<const double> extra);

struct TimeChangedPath {
  std::vector<double> times;
  std::vector<double> inner_times;
  std::vector<Eigen::VectorXd> values;
};

TimeChangedPath sample_time_changed_sde(const SdeModel& model, const levy::LevyModel& levy, ClockKind kind,
                                        std::span<const double> grid, double h, Rng& rng);

// Exact OU transition coupled with its Brownian increment over dt:
// dW and I = int e^{-rate (dt - u)} dW_u are jointly Gaussian.
struct OuNoise {
  double dW;
  double I;
};
OuNoise ou_noise(double rate, double dt, Rng& rng);

struct OuParams {
  double rate, mean, vol, x0;
};

struct StrongErrorSample {
  double t_star;
  double max_sq_error;
};

// Time-changed OU: max over grid times of |X_{T_s} - X^h_{T_s}|^2 with the
// scheme and the exact solution driven by the same noise.
StrongErrorSample ou_strong_error_replica(const OuParams& ou, const levy::LevyModel& levy, ClockKind kind,
                                          std::span<const double> grid, double h, Rng& rng);

// Plain OU on [0, t_end]: mean over paths of sup_k |X_{kh} - X^h_{kh}|^2 for
// h = t_end 2^{-j}, j in [j_min, j_max]; noise is drawn on the finest mesh.
std::vector<double> ou_strong_error_sweep(const OuParams& ou, double t_end, int j_min, int j_max,
                                          std::size_t n_paths, std::uint64_t seed);

}  // namespace invsub::sde

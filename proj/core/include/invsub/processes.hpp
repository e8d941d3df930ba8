#pragma once

#include "invsub/levy.hpp"
#include "invsub/rng.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace invsub::processes {

enum class Variant { Brownian, IsotropicStable, OrnsteinUhlenbeck, ClosedFormDiffusion };

struct FellerSpec {
  Variant variant = Variant::Brownian;
  int d = 1;
  Eigen::VectorXd x0;
  // Brownian: increments N(drift*dt, diffusion*dt)
  Eigen::VectorXd drift;
  Eigen::MatrixXd diffusion;
  // isotropic stable: characteristic exponent |xi|^alpha_M
  double alpha_M = 1.0;
  // Ornstein-Uhlenbeck, applied to every coordinate: dX = rate (mean - X) dt + vol dW
  double ou_rate = 1.0, ou_mean = 0.0, ou_vol = 1.0;
  // closed-form diffusion: value = transform(s, W_s) for standard d-dim Brownian W
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> transform;

  static FellerSpec brownian(int d = 1);
  static FellerSpec isotropic_stable(int d, double alpha_M);
  static FellerSpec ornstein_uhlenbeck(double rate, double mean, double vol, double x0 = 0.0);
  static FellerSpec closed_form(int d, std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> transform);

  void validate() const;
};

enum class ClockKind { Inverse, Undershoot, Overshoot };

// Exact sequential draw of M at non-decreasing inner times, started from x0 at time 0.
std::vector<Eigen::VectorXd> sample_feller_at(const FellerSpec& spec, std::span<const double> inner_times,
                                              Rng& rng);

struct TimeChangedSample {
  std::vector<double> times;
  std::vector<double> inner_times;
  std::vector<Eigen::VectorXd> values;
};

// Clock and process use separate child streams of rng.
TimeChangedSample sample_time_changed(const FellerSpec& spec, const levy::LevyModel& model, ClockKind kind,
                                      std::span<const double> grid, Rng& rng);

// Clock values T_{t_i} alone (inverse: L, undershoot: H, overshoot: D).
std::vector<double> sample_clock(const levy::LevyModel& model, ClockKind kind, std::span<const double> grid,
                                 Rng& rng);

// Pruitt function h(r) = d Sigma^2 / r^2 + int (|z|^2/r^2 ^ 1) Pi(dz).
double pruitt_h(const FellerSpec& spec, double r);

// int_1^inf h nu(dh); +inf when divergent.
double overshoot_moment(const levy::LevyModel& model);

struct MomentReport {
  bool clt_ok = false;
  bool berry_esseen_ok = false;
  double tail_2p = 0.0;  // int_{|z|>1} |z|^{2p} Pi(dz)
  double tail_3p = 0.0;
  double overshoot_integral = 0.0;
  std::vector<std::string> reasons;
};

// Throws UnsupportedError("condition check unavailable") for variants other than
// Brownian and isotropic stable.
MomentReport check_moment_conditions(const FellerSpec& spec, const levy::LevyModel& model, ClockKind kind,
                                     double p, double t);

}  // namespace invsub::processes

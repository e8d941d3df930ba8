#pragma once

#include "invsub/first_passage.hpp"
#include "invsub/levy.hpp"
#include "invsub/rng.hpp"

#include <span>
#include <vector>

namespace invsub::paths {

struct AgeState {
  double x = 0.0;  // A_{L_t}
  double v = 0.0;  // age gamma_t
};

struct LifetimeState {
  double x = 0.0;  // A_{L_t}
  double r = 0.0;  // remaining lifetime Gamma_t
};

struct TripletState {
  double g = 0.0;  // age
  double x = 0.0;
  double R = 0.0;  // remaining lifetime
};

struct PathTelemetry {
  Counters counters;
  std::uint64_t steps = 0;
  std::uint64_t constancy_steps = 0;
  std::uint64_t crossings = 0;
  std::uint64_t ops = 0;  // one unit per step, plus sampler iterations and rejections
};

// The grid holds absolute times; t0 is the time of the initial state. A grid
// point equal to t0 (first entry only) emits the initial state unchanged.
std::vector<AgeState> sample_age_path(const AgeState& initial, double t0, std::span<const double> grid,
                                      const levy::LevyModel& model, Rng& rng,
                                      PathTelemetry* telemetry = nullptr);
std::vector<LifetimeState> sample_lifetime_path(const LifetimeState& initial, double t0,
                                                std::span<const double> grid,
                                                const levy::LevyModel& model, Rng& rng,
                                                PathTelemetry* telemetry = nullptr);
std::vector<TripletState> sample_triplet_path(const TripletState& initial, double t0,
                                              std::span<const double> grid,
                                              const levy::LevyModel& model, Rng& rng,
                                              PathTelemetry* telemetry = nullptr);

// Horizon used when a crossing is requested at horizon 0.
double min_horizon(double dt);

std::vector<double> uniform_grid(double t_end, std::size_t n);

struct CostReport {
  std::uint64_t steps;
  double measured;          // telemetry ops
  double bound;             // n (K + c), c = 7 for age paths and 4 for lifetime/triplet paths
  double calibrated_K;
  bool within;
};

enum class PathKind { Age, Lifetime, Triplet };

// K is the measured mean cost (ops) of the single-time sampler at the step horizon.
CostReport step_cost_report(const PathTelemetry& telemetry, PathKind kind, double calibrated_K);

// Mean ops of n single-time crossings at horizon h.
double calibrate_single_time_cost(const levy::LevyModel& model, double h, std::size_t n, Rng& rng);

}  // namespace invsub::paths

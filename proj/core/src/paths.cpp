#include "invsub/paths.hpp"

#include "invsub/errors.hpp"

#include <cmath>
#include <limits>

namespace invsub::paths {

namespace {

void check_grid(double t0, std::span<const double> grid) {
  double prev = t0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError("grid times must be finite");
    const bool ok = grid[i] > prev || (i == 0 && grid[i] == t0);
    if (!ok) throw DomainError("grid must be strictly increasing and start at or after t0");
    prev = grid[i];
  }
}

std::uint64_t work(const Counters& c) { return c.iterations + c.rejections; }

first_passage::CrossingSample crossing(double h, const levy::LevyModel& m, Rng& rng, PathTelemetry* tel) {
  if (!tel) return first_passage::sample_crossing(h, m, rng);
  Counters c;
  const auto s = first_passage::sample_crossing(h, m, rng, &c);
  tel->counters += c;
  tel->ops += work(c);
  ++tel->crossings;
  return s;
}

void count_step(PathTelemetry* tel, bool constancy) {
  if (!tel) return;
  ++tel->steps;
  ++tel->ops;
  if (constancy) ++tel->constancy_steps;
}

}  // namespace

double min_horizon(double dt) {
  return std::numeric_limits<double>::epsilon() * std::max(1.0, dt);
}

std::vector<double> uniform_grid(double t_end, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = t_end * static_cast<double>(i + 1) / static_cast<double>(n);
  return g;
}

std::vector<AgeState> sample_age_path(const AgeState& initial, double t0, std::span<const double> grid,
                                      const levy::LevyModel& model, Rng& rng, PathTelemetry* tel) {
  if (initial.v < 0.0) throw DomainError("initial age must be nonnegative");
  check_grid(t0, grid);
  std::vector<AgeState> out;
  out.reserve(grid.size());
  AgeState s = initial;
  double prev = t0;
  for (double t : grid) {
    const double dt = t - prev;
    prev = t;
    if (dt == 0.0) {
      out.push_back(s);
      continue;
    }
    double horizon = dt;
    if (s.v > 0.0) {
      Counters c;
      const double jump = levy::sample_Sv(model, s.v, rng, tel ? &c : nullptr);
      if (tel) {
        tel->counters += c;
        tel->ops += work(c);
      }
      if (jump >= s.v + dt) {
        count_step(tel, true);
        s.v += dt;
        out.push_back(s);
        continue;
      }
      horizon = std::max(s.v + dt - jump, min_horizon(dt));
    }
    count_step(tel, false);
    const auto c = crossing(horizon, model, rng, tel);
    s.x += c.L;
    s.v = c.gamma;
    out.push_back(s);
  }
  return out;
}

std::vector<LifetimeState> sample_lifetime_path(const LifetimeState& initial, double t0,
                                                std::span<const double> grid,
                                                const levy::LevyModel& model, Rng& rng,
                                                PathTelemetry* tel) {
  if (initial.r < 0.0) throw DomainError("initial remaining lifetime must be nonnegative");
  check_grid(t0, grid);
  std::vector<LifetimeState> out;
  out.reserve(grid.size());
  LifetimeState s = initial;
  double prev = t0;
  for (double t : grid) {
    const double dt = t - prev;
    prev = t;
    if (dt == 0.0) {
      out.push_back(s);
      continue;
    }
    if (s.r > dt) {
      count_step(tel, true);
      s.r -= dt;
    } else {
      count_step(tel, false);
      const auto c = crossing(std::max(dt - s.r, min_horizon(dt)), model, rng, tel);
      s.x += c.L;
      s.r = c.Gamma;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<TripletState> sample_triplet_path(const TripletState& initial, double t0,
                                              std::span<const double> grid,
                                              const levy::LevyModel& model, Rng& rng,
                                              PathTelemetry* tel) {
  if (initial.g < 0.0 || initial.R < 0.0) throw DomainError("initial age and lifetime must be nonnegative");
  check_grid(t0, grid);
  std::vector<TripletState> out;
  out.reserve(grid.size());
  TripletState s = initial;
  double prev = t0;
  for (double t : grid) {
    const double dt = t - prev;
    prev = t;
    if (dt == 0.0) {
      out.push_back(s);
      continue;
    }
    if (s.R > dt) {
      count_step(tel, true);
      s.g += dt;
      s.R -= dt;
    } else {
      count_step(tel, false);
      const auto c = crossing(std::max(dt - s.R, min_horizon(dt)), model, rng, tel);
      s.g = c.gamma;
      s.x += c.L;
      s.R = c.Gamma;
    }
    out.push_back(s);
  }
  return out;
}

CostReport step_cost_report(const PathTelemetry& tel, PathKind kind, double K) {
  const double c = kind == PathKind::Age ? 7.0 : 4.0;
  CostReport r{};
  r.steps = tel.steps;
  r.measured = static_cast<double>(tel.ops);
  r.calibrated_K = K;
  r.bound = static_cast<double>(tel.steps) * (K + c);
  r.within = r.measured <= r.bound;
  return r;
}

double calibrate_single_time_cost(const levy::LevyModel& model, double h, std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("calibration needs at least one draw");
  Counters c;
  for (std::size_t i = 0; i < n; ++i) first_passage::sample_crossing(h, model, rng, &c);
  return static_cast<double>(work(c)) / static_cast<double>(n);
}

}  // namespace invsub::paths

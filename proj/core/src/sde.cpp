#include "invsub/sde.hpp"

#include "invsub/errors.hpp"
#include "invsub/levy.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace invsub::sde {

SdeModel SdeModel::ornstein_uhlenbeck(double rate, double mean, double vol, double x0, double K) {
  SdeModel s;
  s.a = [rate, mean](double, const Eigen::VectorXd& x) { return Eigen::VectorXd(rate * (mean - x.array())); };
  s.b = [vol](double, const Eigen::VectorXd&) { return Eigen::MatrixXd::Constant(1, 1, vol); };
  s.K = K;
  s.gamma_hoelder = 1.0;
  s.x0 = Eigen::VectorXd::Constant(1, x0);
  s.x0_second_moment = x0 * x0;
  return s;
}

SdeModel SdeModel::linear_growth(double theta, double x0, double K) {
  SdeModel s;
  s.a = [](double t, const Eigen::VectorXd& x) { return Eigen::VectorXd(x / (1.0 + t)); };
  s.b = [theta](double, const Eigen::VectorXd& x) { return Eigen::MatrixXd(theta * x); };
  s.K = K;
  s.gamma_hoelder = 1.0;
  s.x0 = Eigen::VectorXd::Constant(1, x0);
  s.x0_second_moment = x0 * x0;
  return s;
}

void SdeModel::validate() const {
  if (d < 1 || m < 1) throw DomainError("SDE dimensions must be positive");
  if (!(K > 0.0)) throw DomainError("K must be positive");
  if (!(gamma_hoelder > 0.0)) throw DomainError("Hoelder exponent must be positive");
  if (!a || !b) throw DomainError("SDE coefficients are missing");
  if (x0.size() != d) throw DomainError("x0 has the wrong dimension");
  if (x0_second_moment < 0.0) throw DomainError("second moment of X_0 must be nonnegative");
}

double c_n(const SdeModel& s, int n) {
  const double d = s.d, m = s.m, K = s.K;
  return 4.0 * n * d * (K + 0.5 * m * K * K + (n - 1.0) * d * m * K * K);
}

ErrorConstants compute_constants(const SdeModel& s) {
  s.validate();
  const double d = s.d, m = s.m, K = s.K;
  const double C = kBdgConstant;
  ErrorConstants k{};
  k.C1_BDG = C;
  k.c1 = 4.0 * d * K * (1.0 + 0.5 * m * K);
  k.c01 = 0.5 + s.x0_second_moment;
  k.A = 12.0 * d * K * K * (1.0 + (1.0 + 4.0 * C * C) * m) * (1.0 + 4.0 * (1.0 + m * m) * d * K * K) *
        (1.0 + k.c01 / (2.0 * k.c1));
  k.C2 = 2.0 * d * (3.0 * K * K * ((1.0 + 4.0 * C * C) * m + 1.0) + 1.0);
  k.C1 = k.A * (1.0 + k.C2 / (k.C2 - 2.0 * k.c1));
  return k;
}

double moment_bound(const ErrorConstants& k, double t) { return k.c01 * std::exp(2.0 * k.c1 * t); }

double increment_bound(const SdeModel& s, const ErrorConstants& k, double t, double h) {
  const double m = s.m;
  return 4.0 * (1.0 + m * m) * (1.0 + k.c01) * s.d * s.K * s.K * std::exp(2.0 * k.c1 * t) * h;
}

std::vector<Eigen::VectorXd> euler_maruyama(const SdeModel& s, std::span<const double> grid,
                                            std::span<const Eigen::VectorXd> dW) {
  s.validate();
  if (grid.empty()) return {};
  if (grid[0] != 0.0) throw DomainError("Euler-Maruyama grid must start at 0");
  if (dW.size() + 1 < grid.size()) throw DomainError("not enough Brownian increments for the grid");
  std::vector<Eigen::VectorXd> out;
  out.reserve(grid.size());
  Eigen::VectorXd x = s.x0;
  out.push_back(x);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double t = grid[i], dt = grid[i + 1] - t;
    if (!(dt > 0.0)) throw DomainError("Euler-Maruyama grid must be strictly increasing");
    x += s.a(t, x) * dt + s.b(t, x) * dW[i];
    if (!x.allFinite()) throw DivergenceError("Euler-Maruyama state became non-finite", i + 1);
    out.push_back(x);
  }
  return out;
}

std::vector<Eigen::VectorXd> euler_maruyama(const SdeModel& s, std::span<const double> grid, Rng& rng) {
  std::vector<Eigen::VectorXd> dW;
  dW.reserve(grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    Eigen::VectorXd w(s.m);
    const double sd = std::sqrt(std::max(grid[i + 1] - grid[i], 0.0));
    for (int j = 0; j < s.m; ++j) w[j] = sd * normal(rng);
    dW.push_back(std::move(w));
  }
  return euler_maruyama(s, grid, dW);
}

// ---------------------------------------------------------------- exponential moments

namespace {

// smallest C3 with phi(C3) = target
double phi_root(const levy::LevyModel& m, double target) {
  double hi = 1.0;
  int k = 0;
  while (!(levy::eval_phi(m, hi) > target)) {
    hi *= 2.0;
    if (++k > 1000 || std::isinf(hi)) throw InapplicableError("no admissible C3: phi stays below the target");
  }
  double lo = 0.0;
  auto f = [&](double x) { return levy::eval_phi(m, x) - target; };
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi),
                                                   boost::math::tools::eps_tolerance<double>(50), it);
  return r.second;
}

}  // namespace

ExpMomentBound exp_moment_inverse(const levy::LevyModel& m, double c, double t) {
  if (!(c > 0.0) || t < 0.0) throw DomainError("exp moment needs c > 0 and t >= 0");
  const double base = phi_root(m, c);
  auto g = [&](double u) {
    const double C3 = base + std::exp(u);
    const double gap = levy::eval_phi(m, C3) - c;
    return C3 * t - std::log(gap);
  };
  double u_hi = std::log(base + 1.0) + 60.0;
  if (t > 0.0) u_hi = std::min(u_hi, std::log(700.0 / t));
  const auto r = boost::math::tools::brent_find_minima(g, -40.0, u_hi, 52);
  return {1.0 + std::exp(r.second), base + std::exp(r.first)};
}

ExpMomentBound exp_moment_inverse_fixed_gap(const levy::LevyModel& m, double c, double t, double gap) {
  if (!(gap > 0.0)) throw DomainError("gap must be positive");
  const double C3 = phi_root(m, c + gap);
  return {1.0 + std::exp(C3 * t) / gap, C3};
}

double exp_moment_undershoot(double c, double t) { return std::exp(c * t); }

double exp_moment_overshoot(const levy::LevyModel& m, double c, double t) {
  const double M = levy::exp_moment_levy(m, c);
  if (!std::isfinite(M)) throw InapplicableError("overshoot bound inapplicable: M(c) is infinite");
  return std::exp(c * t) * (std::exp(c * std::max(1.0, t)) + M * levy::potential_mass(m, t));
}

double exp_moment(const levy::LevyModel& m, ClockKind kind, double c, double t) {
  switch (kind) {
    case ClockKind::Inverse: return exp_moment_inverse(m, c, t).value;
    case ClockKind::Undershoot: return exp_moment_undershoot(c, t);
    case ClockKind::Overshoot: return exp_moment_overshoot(m, c, t);
  }
  return kInf;
}

double choose_step(const ErrorConstants& k, double em, double gamma_hoelder, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double p = std::max(1.0, 1.0 / (2.0 * gamma_hoelder));
  const double h = std::pow(epsilon / (k.C1 * em), p);
  return std::min(std::nextafter(1.0, 0.0), h);
}

double strong_error_bound(const ErrorConstants& k, const levy::LevyModel& m, ClockKind kind, double t, double h,
                          double gamma_hoelder) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("h must lie in (0,1)");
  return k.C1 * exp_moment(m, kind, k.C2, t) * std::pow(h, std::min(2.0 * gamma_hoelder, 1.0));
}

StepPlan plan_step(const SdeModel& s, const levy::LevyModel& levy, ClockKind kind, double t, double epsilon) {
  StepPlan p{};
  p.constants = compute_constants(s);
  p.epsilon = epsilon;
  p.exp_moment = exp_moment(levy, kind, p.constants.C2, t);
  p.h = choose_step(p.constants, p.exp_moment, s.gamma_hoelder, epsilon);
  p.bound = p.constants.C1 * p.exp_moment * std::pow(p.h, std::min(2.0 * s.gamma_hoelder, 1.0));
  return p;
}

std::vector<double> merged_grid(double h, std::span<const double> extra) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("h must lie in (0,1)");
  double top = 0.0;
  for (double e : extra) top = std::max(top, e);
  const double n = std::ceil(top / h);
  if (n + static_cast<double>(extra.size()) + 1.0 > static_cast<double>(kMaxGridNodes))
    throw PlanningError("merged grid would exceed the node cap; increase h");
  const auto k = static_cast<std::size_t>(n);
  std::vector<double> g;
  g.reserve(k + 1 + extra.size());
  for (std::size_t i = 0; i <= k; ++i) g.push_back(static_cast<double>(i) * h);
  g.insert(g.end(), extra.begin(), extra.end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

TimeChangedPath sample_time_changed_sde(const SdeModel& s, const levy::LevyModel& levy, ClockKind kind,
                                        std::span<const double> grid, double h, Rng& rng) {
  Rng clock_rng = make_stream(rng(), 0);
  Rng noise_rng = make_stream(rng(), 1);
  TimeChangedPath out;
  out.times.assign(grid.begin(), grid.end());
  out.inner_times = processes::sample_clock(levy, kind, grid, clock_rng);
  const auto mesh = merged_grid(h, out.inner_times);
  const auto x = euler_maruyama(s, mesh, noise_rng);
  out.values.reserve(grid.size());
  for (double T : out.inner_times) {
    const auto it = std::lower_bound(mesh.begin(), mesh.end(), T);
    out.values.push_back(x[static_cast<std::size_t>(it - mesh.begin())]);
  }
  return out;
}

OuNoise ou_noise(double rate, double dt, Rng& rng) {
  const double var_i = -std::expm1(-2.0 * rate * dt) / (2.0 * rate);
  const double cov = -std::expm1(-rate * dt) / rate;
  const double dw = std::sqrt(dt) * normal(rng);
  const double resid = std::max(var_i - cov * cov / dt, 0.0);
  return {dw, cov / dt * dw + std::sqrt(resid) * normal(rng)};
}

StrongErrorSample ou_strong_error_replica(const OuParams& ou, const levy::LevyModel& levy, ClockKind kind,
                                          std::span<const double> grid, double h, Rng& rng) {
  Rng clock_rng = make_stream(rng(), 0);
  Rng noise_rng = make_stream(rng(), 1);
  const auto T = processes::sample_clock(levy, kind, grid, clock_rng);
  const auto mesh = merged_grid(h, T);
  std::vector<double> exact(mesh.size()), scheme(mesh.size());
  exact[0] = scheme[0] = ou.x0;
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    const double dt = mesh[i + 1] - mesh[i];
    const OuNoise n = ou_noise(ou.rate, dt, noise_rng);
    const double e = std::exp(-ou.rate * dt);
    exact[i + 1] = e * exact[i] + ou.mean * (1.0 - e) + ou.vol * n.I;
    scheme[i + 1] = scheme[i] + ou.rate * (ou.mean - scheme[i]) * dt + ou.vol * n.dW;
  }
  StrongErrorSample best{grid.empty() ? 0.0 : grid[0], 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::lower_bound(mesh.begin(), mesh.end(), T[i]) - mesh.begin());
    const double err = (exact[k] - scheme[k]) * (exact[k] - scheme[k]);
    if (err > best.max_sq_error) best = {grid[i], err};
  }
  return best;
}

std::vector<double> ou_strong_error_sweep(const OuParams& ou, double t_end, int j_min, int j_max,
                                          std::size_t n_paths, std::uint64_t seed) {
  if (j_min < 0 || j_max < j_min || j_max > 24) throw DomainError("invalid refinement levels");
  const std::size_t nf = std::size_t{1} << j_max;
  const double df = t_end / static_cast<double>(nf);
  std::vector<double> acc(static_cast<std::size_t>(j_max - j_min + 1), 0.0);
  std::vector<double> dw(nf), exact(nf + 1);
  for (std::size_t p = 0; p < n_paths; ++p) {
    Rng rng = make_stream(seed, p);
    exact[0] = ou.x0;
    const double e = std::exp(-ou.rate * df);
    for (std::size_t i = 0; i < nf; ++i) {
      const OuNoise n = ou_noise(ou.rate, df, rng);
      dw[i] = n.dW;
      exact[i + 1] = e * exact[i] + ou.mean * (1.0 - e) + ou.vol * n.I;
    }
    for (int j = j_min; j <= j_max; ++j) {
      const std::size_t f = std::size_t{1} << (j_max - j);
      const double h = df * static_cast<double>(f);
      double x = ou.x0, sup = 0.0;
      for (std::size_t k = 0; k < nf; k += f) {
        double w = 0.0;
        for (std::size_t i = k; i < k + f; ++i) w += dw[i];
        x += ou.rate * (ou.mean - x) * h + ou.vol * w;
        const double err = x - exact[k + f];
        sup = std::max(sup, err * err);
      }
      acc[static_cast<std::size_t>(j - j_min)] += sup;
    }
  }
  for (double& a : acc) a /= static_cast<double>(n_paths);
  return acc;
}

}  // namespace invsub::sde

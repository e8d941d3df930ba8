#include "invsub/montecarlo.hpp"

#include "invsub/errors.hpp"
#include "invsub/numeric.hpp"
#include "invsub/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace invsub::montecarlo {

std::vector<double> run_replicas(std::size_t N, std::uint64_t seed, unsigned threads,
                                 const std::function<double(std::size_t, Rng&)>& replica) {
  std::vector<double> out(N);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(N, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= N) return;
      try {
        Rng rng = make_stream(seed, i);
        const double v = replica(i, rng);
        if (!std::isfinite(v)) throw SamplerError("non-finite functional value at replica " + std::to_string(i), i, v);
        out[i] = v;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
        next = N;
        return;
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

double z_value(double conf_level) {
  if (!(conf_level > 0.0 && conf_level < 1.0)) throw DomainError("confidence level must lie in (0,1)");
  return stats::normal_quantile(1.0 - (1.0 - conf_level) / 2.0);
}

double ci_halfwidth(double variance, std::size_t N, double conf_level) {
  return std::sqrt(variance / static_cast<double>(N)) * z_value(conf_level);
}

McEstimate summarize(std::vector<double> values, double conf_level, double psi_third_norm) {
  if (values.size() < 2) throw DomainError("an estimate needs N >= 2");
  McEstimate e;
  e.N = values.size();
  e.conf_level = conf_level;
  e.mean = stats::mean(values);
  e.sample_variance = stats::variance(values);
  std::vector<double> c(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) c[i] = std::pow(std::fabs(values[i] - e.mean), 3.0);
  e.third_abs_moment = numeric::pairwise_sum(c) / static_cast<double>(values.size());
  e.ci_halfwidth = ci_halfwidth(e.sample_variance, e.N, conf_level);
  if (e.sample_variance > 0.0)
    e.berry_esseen_bound = berry_esseen_bound(e.third_abs_moment, e.sample_variance, e.N, psi_third_norm);
  e.replicas = std::move(values);
  return e;
}

McEstimate estimate_exact(const FunctionalSpec& f, const processes::FellerSpec& spec, const levy::LevyModel& model,
                          ClockKind kind, std::span<const double> grid, std::size_t N, std::uint64_t seed,
                          double conf_level, unsigned threads) {
  if (N < 2) throw DomainError("an estimate needs N >= 2");
  if (!f.u) throw DomainError("functional is missing");
  auto values = run_replicas(N, seed, threads, [&](std::size_t, Rng& rng) {
    const auto s = processes::sample_time_changed(spec, model, kind, grid, rng);
    return f.u(s.values);
  });
  McEstimate e = summarize(std::move(values), conf_level);
  try {
    const double t = grid.empty() ? 1.0 : grid.back();
    e.authorization = processes::check_moment_conditions(spec, model, kind, f.growth_p, t);
  } catch (const UnsupportedError&) {
  }
  return e;
}

std::size_t choose_N_z(double eps, double var, double z) {
  if (!(eps > 0.0 && var > 0.0 && z > 0.0)) throw DomainError("choose_N needs positive inputs");
  const double x = var * z * z / (eps * eps);
  if (x >= 1e18) throw PlanningError("replica count overflows");
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(x)) + 1);
}

std::size_t choose_N(double eps, double var, double conf_level) { return choose_N_z(eps, var, z_value(conf_level)); }

double berry_esseen_bound(double rho, double sigma2, std::size_t N, double psi3) {
  if (!(sigma2 > 0.0)) throw DomainError("Berry-Esseen bound undefined for zero variance");
  return kBerryEsseenConstant * psi3 * rho / (std::sqrt(static_cast<double>(N)) * std::pow(sigma2, 1.5));
}

double variance_bound(double sup_u_sq, double C, std::size_t n, const sde::ErrorConstants& k, double em) {
  return sup_u_sq + 4.0 * C * static_cast<double>(n) * std::max(k.C1, k.c01) * em;
}

double sup_u_squared(const FunctionalSpec& f, int d, std::size_t n, double radius, std::uint64_t seed) {
  const std::size_t dim = static_cast<std::size_t>(d) * n;
  std::vector<Eigen::VectorXd> x(n, Eigen::VectorXd::Zero(d));
  double best = 0.0;
  auto eval = [&] {
    const double v = f.u(x);
    best = std::max(best, v * v);
  };
  if (dim <= 3) {
    constexpr int kPts = 41;
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= kPts;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t r = idx;
      for (std::size_t j = 0; j < dim; ++j) {
        x[j / d][static_cast<Eigen::Index>(j % d)] = radius * (2.0 * static_cast<double>(r % kPts) / (kPts - 1) - 1.0);
        r /= kPts;
      }
      eval();
    }
  } else {
    Rng rng = make_stream(seed, 0);
    for (int it = 0; it < 10000; ++it) {
      for (std::size_t j = 0; j < dim; ++j)
        x[j / d][static_cast<Eigen::Index>(j % d)] = radius * (2.0 * uniform01(rng) - 1.0);
      eval();
    }
  }
  return best;
}

double l2_budget(double v, std::size_t N, double Cu, const sde::ErrorConstants& k, double em, double h,
                 double gamma_hoelder) {
  return v / static_cast<double>(N) + Cu * std::sqrt(k.C1 * em * std::pow(h, std::min(2.0 * gamma_hoelder, 1.0)));
}

McEstimate estimate_em(const FunctionalSpec& f, const sde::SdeModel& model, const levy::LevyModel& levy,
                       ClockKind kind, std::span<const double> grid, std::size_t N, double h, std::uint64_t seed,
                       const BudgetInputs& budget, double conf_level, unsigned threads) {
  if (N < 2) throw DomainError("an estimate needs N >= 2");
  if (!(h > 0.0 && h < 1.0)) throw DomainError("h must lie in (0,1)");
  auto values = run_replicas(N, seed, threads, [&](std::size_t, Rng& rng) {
    const auto s = sde::sample_time_changed_sde(model, levy, kind, grid, h, rng);
    return f.u(s.values);
  });
  McEstimate e = summarize(std::move(values), conf_level);
  e.h = h;
  if (f.lipschitz_Cu) {
    try {
      const auto k = sde::compute_constants(model);
      const double t = grid.empty() ? 0.0 : grid.back();
      const double em = sde::exp_moment(levy, kind, k.C2, t);
      const double v = variance_bound(budget.sup_u_sq, budget.C, grid.size(), k, em);
      e.l2_budget = l2_budget(v, N, *f.lipschitz_Cu, k, em, h, model.gamma_hoelder);
    } catch (const InapplicableError&) {
      // budget unavailable; estimate is still returned
    }
  }
  return e;
}

Schedule schedule_h_N(double eps, std::optional<double> delta, double gamma_hoelder, const sde::ErrorConstants& k,
                      double em, double Cu, double v) {
  if (!(eps > 0.0)) throw DomainError("target error must be positive");
  const double rate = std::min(2.0 * gamma_hoelder, 1.0);
  const double d = delta.value_or(-2.0 / rate);
  if (d >= -1.0) throw DomainError("delta >= -1 violates the CLT scheduling hypothesis");
  const double n = std::ceil((v + Cu * std::sqrt(k.C1 * em)) / eps);
  const auto N = std::max<std::size_t>(2, static_cast<std::size_t>(n));
  return {N, std::pow(static_cast<double>(N), d)};
}

NormalityReport clt_diagnostic(std::span<const double> batch_means, double significance) {
  if (batch_means.size() < 200) throw DomainError("CLT diagnostic needs at least 200 batches");
  const auto r = stats::anderson_darling_normal(batch_means);
  return {r.statistic, r.p_value, r.p_value > significance, batch_means.size()};
}

}  // namespace invsub::montecarlo

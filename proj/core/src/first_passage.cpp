#include "invsub/first_passage.hpp"

#include "invsub/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace invsub::first_passage {

namespace {

constexpr double kPi = std::numbers::pi;

void tick(Counters* c) {
  if (c) ++c->iterations;
}
void reject(Counters* c) {
  if (c) ++c->rejections;
}

// sigma_E of the theta-scaled stable subordinator conditioned below b, tilted
// by e^{-q w} when q > 0. The inversion table is kept in `cache` when given.
double stable_below(double E, double b, double alpha, double theta, double q, Rng& rng, Counters* counters,
                    std::uint64_t cap = kDefaultIterationCap,
                    std::optional<StableBelowSampler>* cache = nullptr) {
  const double scale = std::pow(theta * E, 1.0 / alpha);
  auto tilt_ok = [&](double w) { return q == 0.0 || uniform01(rng) < std::exp(-q * w); };
  if (std::isinf(b)) {
    for (std::uint64_t i = 0; i < cap; ++i) {
      tick(counters);
      const double w = scale * sample_stable_positive(alpha, 1.0, rng);
      if (tilt_ok(w)) return w;
      reject(counters);
    }
    throw SamplerError("tilted stable draw exceeded the iteration cap", cap, 0.0);
  }
  const double x = b / scale;
  const double y = std::pow(x, -alpha / (1.0 - alpha));
  // P(S < x) <= exp(-A0 y): skip rejection when it cannot reach 10^-3
  if (zolotarev_A0(alpha) * y < 6.9) {
    for (int i = 0; i < 1000; ++i) {
      tick(counters);
      const double s = sample_stable_positive(alpha, 1.0, rng);
      if (s < x && tilt_ok(scale * s)) return scale * s;
      reject(counters);
    }
  }
  if (counters) ++counters->fallbacks;
  std::optional<StableBelowSampler> local;
  std::optional<StableBelowSampler>& smp = cache ? *cache : local;
  if (!smp || smp->level() != x || smp->alpha() != alpha) smp.emplace(alpha, x);
  for (std::uint64_t i = 0; i < cap; ++i) {
    tick(counters);
    const double w = scale * (*smp)(rng);
    if (tilt_ok(w)) return w;
    reject(counters);
  }
  throw SamplerError("conditional stable draw exceeded the iteration cap", cap, std::exp(-q * b));
}

void require_driftless(const levy::LevyModel& m) {
  if (m.drift != 0.0)
    throw UnsupportedError("crossing samplers support driftless subordinators only");
}

CrossingSample single_level_q0(double b0, const levy::LevyModel& m, Rng& rng, Counters* counters,
                               std::uint64_t cap) {
  double x = 0.0, z = 0.0, v = 0.0, b = b0;
  for (std::uint64_t it = 0; it < cap; ++it) {
    const levy::Decomposition dec = levy::decompose_at_level(m, b);
    const double E = dec.upsilon > 0.0 ? exponential(rng) / dec.upsilon : kInf;
    tick(counters);
    const CrossingSample c = sample_truncated_stable_crossing(b, m.alpha, m.theta, b, rng, counters, cap);
    if (E > c.L) {
      x += c.L;
      z = v + (b - c.gamma);
      v += b + c.Gamma;
      return {x, b0 - z, v - b0};
    }
    const double W = stable_below(E, b, m.alpha, m.theta, 0.0, rng, counters, cap);
    const double J = dec.zeta_tilde.sample(rng);
    x += E;
    z = v + W;
    v += W + J;
    if (v >= b0) return {x, b0 - z, v - b0};
    b = b0 - v;
  }
  throw SamplerError("q=0 crossing recursion exceeded the iteration cap", cap, b0 - v);
}

}  // namespace

CrossingSample sample_stable_crossing(double t, double alpha, double theta, Rng& rng, Counters* counters) {
  if (!(t > 0.0)) throw DomainError("barrier must be positive");
  const double a0 = zolotarev_A0(alpha);
  for (;;) {
    tick(counters);
    const double g = t * beta_variate(rng, 1.0 - alpha, alpha);
    const double H = t - g;
    const double Gamma = g * std::expm1(-std::log(uniform01(rng)) / alpha);

    double a;
    for (;;) {
      a = zolotarev_A(alpha, kPi * uniform01(rng));
      if (uniform01(rng) < std::pow(a0 / a, 1.0 - alpha)) break;
      reject(counters);
    }
    const double G = gamma_variate(rng, 2.0 - alpha);
    const double L = std::pow(H, alpha) * std::pow(G / a, 1.0 - alpha) / theta;
    if (g > 0.0 && Gamma > 0.0) return {L, g, Gamma};
  }
}

CrossingSample sample_truncated_stable_crossing(double b, double alpha, double theta, double trunc,
                                                Rng& rng, Counters* counters, std::uint64_t cap) {
  if (b > trunc) throw DomainError("truncated crossing needs barrier <= truncation level");
  double x = 0.0, level = b;
  for (std::uint64_t it = 0; it < cap; ++it) {
    const CrossingSample c = sample_stable_crossing(level, alpha, theta, rng, counters);
    if (c.gamma + c.Gamma <= trunc) return {x + c.L, c.gamma, c.Gamma};
    reject(counters);
    x += c.L;
    level = c.gamma;
  }
  throw SamplerError("truncated stable crossing exceeded the iteration cap", cap, level);
}

CrossingSample sample_tempered_truncated_crossing(double b, double alpha, double theta, double q,
                                                  double trunc, Rng& rng, Counters* counters,
                                                  std::uint64_t cap) {
  if (q == 0.0) return sample_truncated_stable_crossing(b, alpha, theta, trunc, rng, counters, cap);
  if (b > trunc) throw DomainError("tempered crossing needs barrier <= truncation level");
  const double phi0 = levy::stable_part_phi(alpha, theta, 0.0, trunc, q);
  const double window = 1.0 / phi0;
  double x = 0.0, level = b;
  std::uint64_t accepted = 0;
  std::optional<StableBelowSampler> cache;
  for (std::uint64_t it = 1; it <= cap; ++it) {
    const CrossingSample c = sample_truncated_stable_crossing(level, alpha, theta, trunc, rng, counters, cap);
    if (c.L <= window) {
      const double acc = std::exp(-q * (level + c.Gamma) - (window - c.L) * phi0);
      if (uniform01(rng) < acc) return {x + c.L, c.gamma, c.Gamma};
    } else {
      const double w = stable_below(window, level, alpha, theta, 0.0, rng, counters, cap, &cache);
      if (uniform01(rng) < std::exp(-q * w)) {
        ++accepted;
        x += window;
        level -= w;
        continue;
      }
    }
    reject(counters);
  }
  throw SamplerError("tempered crossing: acceptance collapsed", cap,
                     static_cast<double>(accepted) / static_cast<double>(cap));
}

double sample_conditional_small(double E, double b, const levy::LevyModel& model, Rng& rng,
                                Counters* counters, std::uint64_t cap) {
  if (!(E > 0.0) || !(b > 0.0)) throw DomainError("conditional draw needs E > 0 and b > 0");
  if (b > model.r) throw DomainError("conditional draw needs b <= r");
  return stable_below(E, b, model.alpha, model.theta, model.q, rng, counters, cap);
}

CrossingSample sample_truncated_crossing(double t, const levy::LevyModel& model, Rng& rng,
                                         Counters* counters, std::uint64_t cap) {
  if (model.q != 0.0) throw DomainError("sample_truncated_crossing needs q = 0");
  require_driftless(model);
  if (!(t > 0.0)) throw DomainError("barrier must be positive");
  if (t <= model.r) return single_level_q0(t, model, rng, counters, cap);

  const auto n = static_cast<std::uint64_t>(std::ceil(t / model.r));
  const double step = t / static_cast<double>(n);
  if (counters) counters->sub_barriers += n;
  double g = 0.0, x = 0.0, R = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (R > step) {
      g += step;
      R -= step;
      continue;
    }
    const double h = std::max(step - R, step * std::numeric_limits<double>::epsilon());
    const CrossingSample c = single_level_q0(h, model, rng, counters, cap);
    g = c.gamma;
    x += c.L;
    R = c.Gamma;
  }
  return {x, g, R};
}

CrossingSample sample_tempered_crossing(double t, const levy::LevyModel& model, Rng& rng,
                                        Counters* counters, std::uint64_t cap) {
  require_driftless(model);
  if (!(t > 0.0)) throw DomainError("barrier must be positive");
  const double ups = model.zeta.total_mass();
  auto clock = [&] { return ups > 0.0 ? exponential(rng) / ups : kInf; };
  double x = 0.0, z = 0.0, v = 0.0;
  double E = clock();
  for (std::uint64_t it = 0; it < cap; ++it) {
    tick(counters);
    const double b = std::min(t - v, model.r);
    const CrossingSample c = sample_tempered_truncated_crossing(b, model.alpha, model.theta, model.q,
                                                                model.r, rng, counters, cap);
    if (E > c.L) {
      x += c.L;
      z = v + (b - c.gamma);
      v += b + c.Gamma;
      E -= c.L;
    } else {
      const double W = sample_conditional_small(E, b, model, rng, counters, cap);
      const double J = model.zeta.sample(rng);
      x += E;
      z = v + W;
      v += W + J;
      E = clock();
    }
    if (v >= t) return {x, t - z, v - t};
  }
  throw SamplerError("tempered crossing recursion exceeded the iteration cap", cap, t - v);
}

CrossingSample sample_crossing(double t, const levy::LevyModel& model, Rng& rng, Counters* counters,
                               std::uint64_t cap) {
  require_driftless(model);
  for (;;) {
    CrossingSample c;
    if (model.kind() == levy::Kind::PureStable)
      c = sample_stable_crossing(t, model.alpha, model.theta, rng, counters);
    else if (model.q == 0.0)
      c = sample_truncated_crossing(t, model, rng, counters, cap);
    else
      c = sample_tempered_crossing(t, model, rng, counters, cap);
    // Gamma = 0 has probability zero without drift: treat as underflow
    if (c.Gamma > 0.0) return c;
  }
}

// ---------------------------------------------------------------- cost bounds

namespace {

double log_cost(double alpha, double lambda, double k) {
  const double a0 = zolotarev_A0(alpha);
  return std::log(alpha * std::tgamma(2.0 - alpha) * a0 / (std::tgamma(1.0 - alpha) * (1.0 - alpha))) -
         (2.0 - alpha) * std::log(a0 - lambda) + k * std::pow(lambda, 1.0 - 1.0 / alpha);
}

double exponent_coefficient(double alpha) {
  return std::pow(std::tgamma(1.0 - alpha), -1.0 / alpha) * std::pow(1.0 - alpha, 1.0 / alpha - 1.0);
}

}  // namespace

double cost_function(double alpha, double lambda) {
  return std::exp(log_cost(alpha, lambda, exponent_coefficient(alpha)));
}

double cost_function_as_printed(double alpha, double lambda) {
  return std::exp(log_cost(alpha, lambda, alpha * exponent_coefficient(alpha)));
}

double frak_c(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const double a0 = zolotarev_A0(alpha);
  const double k = exponent_coefficient(alpha);
  auto f = [&](double x) { return log_cost(alpha, a0 * x, k); };
  // coarse scan on x = lambda/A0, then Brent around the best cell
  constexpr int kGrid = 4000;
  int best = 1;
  double fb = f(1.0 / kGrid);
  for (int i = 2; i < kGrid; ++i) {
    const double v = f(static_cast<double>(i) / kGrid);
    if (v < fb) {
      fb = v;
      best = i;
    }
  }
  const double lo = std::max(static_cast<double>(best - 1) / kGrid, 1e-12);
  const double hi = std::min(static_cast<double>(best + 1) / kGrid, 1.0 - 1e-12);
  const auto r = boost::math::tools::brent_find_minima(f, lo, hi, 52);
  return std::exp(std::min(r.second, fb));
}

CostBounds expected_cost_bounds(const levy::LevyModel& model, double t, double const_zeta, double kappa,
                                double bits) {
  model.validate();
  CostBounds out{};
  const double n = std::isinf(model.r) ? 1.0 : std::ceil(t / model.r);
  out.frak_c = frak_c(model.alpha);
  out.bound_simplif = n * (out.frak_c + 9.0) * const_zeta;

  const double a = model.alpha;
  // sup over (0, r] of nu_bar(h) u((0,h]) for the tempered stable law; constant when q = 0
  double sup = std::sin(kPi * a) / (kPi * a);
  if (model.q > 0.0) {
    const levy::LevyModel ts = levy::LevyModel::tempered(a, model.q, 1.0);
    const double hmax = std::isinf(model.r) ? 50.0 / model.q : model.r;
    for (int i = 0; i <= 60; ++i) {
      const double h = hmax * std::pow(1e-6, 1.0 - i / 60.0);
      sup = std::max(sup, levy::tail_nu(ts, h) * levy::potential_mass(ts, h));
    }
  }
  const double qr = model.q == 0.0 ? 0.0 : model.q * model.r;
  const double rr = std::isinf(model.r) ? t : model.r;
  out.K_clm = kappa * (1.0 + model.q * rr / a) *
              (std::pow(1.0 - a, -3.0) + std::fabs(std::log(a)) + std::log(bits)) / a / (1.0 - sup);
  out.bound_simplif2 = n * (out.K_clm + 5.0 * std::exp(qr) + 4.0) * const_zeta;
  return out;
}

}  // namespace invsub::first_passage

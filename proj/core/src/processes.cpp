#include "invsub/processes.hpp"

#include "invsub/errors.hpp"
#include "invsub/numeric.hpp"
#include "invsub/paths.hpp"
#include "invsub/stable.hpp"

#include <cmath>
#include <numbers>

namespace invsub::processes {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd gaussian(int d, Rng& rng) {
  Eigen::VectorXd z(d);
  for (int i = 0; i < d; ++i) z[i] = normal(rng);
  return z;
}

// c in Pi(dz) = c |z|^{-d-alpha} dz and the surface area of the unit sphere
double stable_levy_constant(int d, double a) {
  return a * std::pow(2.0, a - 1.0) * std::tgamma((d + a) / 2.0) /
         (std::pow(kPi, d / 2.0) * std::tgamma(1.0 - a / 2.0));
}
double sphere_area(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

// int_{|z|>1} |z|^k Pi(dz) for the isotropic stable measure
double stable_tail_moment(int d, double a, double k) {
  if (k >= a) return kInf;
  return stable_levy_constant(d, a) * sphere_area(d) / (a - k);
}

}  // namespace

FellerSpec FellerSpec::brownian(int d) {
  FellerSpec s;
  s.variant = Variant::Brownian;
  s.d = d;
  s.x0 = Eigen::VectorXd::Zero(d);
  s.drift = Eigen::VectorXd::Zero(d);
  s.diffusion = Eigen::MatrixXd::Identity(d, d);
  return s;
}

FellerSpec FellerSpec::isotropic_stable(int d, double alpha_M) {
  FellerSpec s;
  s.variant = Variant::IsotropicStable;
  s.d = d;
  s.x0 = Eigen::VectorXd::Zero(d);
  s.alpha_M = alpha_M;
  return s;
}

FellerSpec FellerSpec::ornstein_uhlenbeck(double rate, double mean, double vol, double x0) {
  FellerSpec s;
  s.variant = Variant::OrnsteinUhlenbeck;
  s.d = 1;
  s.x0 = Eigen::VectorXd::Constant(1, x0);
  s.ou_rate = rate;
  s.ou_mean = mean;
  s.ou_vol = vol;
  return s;
}

FellerSpec FellerSpec::closed_form(int d, std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> f) {
  FellerSpec s;
  s.variant = Variant::ClosedFormDiffusion;
  s.d = d;
  s.transform = std::move(f);
  s.x0 = s.transform(0.0, Eigen::VectorXd::Zero(d));
  return s;
}

void FellerSpec::validate() const {
  if (d < 1) throw DomainError("dimension must be positive");
  if (x0.size() != d) throw DomainError("x0 has the wrong dimension");
  switch (variant) {
    case Variant::Brownian: {
      if (drift.size() != d || diffusion.rows() != d || diffusion.cols() != d)
        throw DomainError("Brownian drift/diffusion have the wrong shape");
      if (!diffusion.isApprox(diffusion.transpose())) throw DomainError("diffusion matrix must be symmetric");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diffusion);
      if (es.eigenvalues().minCoeff() < -1e-12) throw DomainError("diffusion matrix must be nonnegative-definite");
      break;
    }
    case Variant::IsotropicStable:
      if (!(alpha_M > 0.0 && alpha_M < 2.0)) throw DomainError("alpha_M must lie in (0,2)");
      break;
    case Variant::OrnsteinUhlenbeck:
      if (!(ou_rate > 0.0 && ou_vol > 0.0)) throw DomainError("OU rate and vol must be positive");
      break;
    case Variant::ClosedFormDiffusion:
      if (!transform) throw DomainError("closed-form diffusion needs a transform");
      break;
  }
}

std::vector<Eigen::VectorXd> sample_feller_at(const FellerSpec& spec, std::span<const double> inner, Rng& rng) {
  spec.validate();
  std::vector<Eigen::VectorXd> out;
  out.reserve(inner.size());
  Eigen::MatrixXd chol;
  if (spec.variant == Variant::Brownian) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(spec.diffusion);
    chol = ldlt.transpositionsP().transpose() * Eigen::MatrixXd(ldlt.matrixL()) *
           ldlt.vectorD().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
  Eigen::VectorXd x = spec.x0;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(spec.d);  // driving Brownian path for the closed-form variant
  double prev = 0.0;
  for (double s : inner) {
    if (s < prev) throw DomainError("inner times must be non-decreasing");
    const double dt = s - prev;
    prev = s;
    if (dt > 0.0) {
      switch (spec.variant) {
        case Variant::Brownian:
          x += spec.drift * dt + chol * gaussian(spec.d, rng) * std::sqrt(dt);
          break;
        case Variant::IsotropicStable: {
          const double sub = first_passage::sample_stable_positive(spec.alpha_M / 2.0, dt, rng);
          x += std::sqrt(2.0 * sub) * gaussian(spec.d, rng);
          break;
        }
        case Variant::OrnsteinUhlenbeck: {
          const double e = std::exp(-spec.ou_rate * dt);
          const double sd = spec.ou_vol * std::sqrt(-std::expm1(-2.0 * spec.ou_rate * dt) / (2.0 * spec.ou_rate));
          for (int i = 0; i < spec.d; ++i) x[i] = e * x[i] + spec.ou_mean * (1.0 - e) + sd * normal(rng);
          break;
        }
        case Variant::ClosedFormDiffusion:
          w += gaussian(spec.d, rng) * std::sqrt(dt);
          x = spec.transform(s, w);
          break;
      }
    }
    out.push_back(x);
  }
  return out;
}

std::vector<double> sample_clock(const levy::LevyModel& model, ClockKind kind, std::span<const double> grid,
                                 Rng& rng) {
  const auto path = paths::sample_triplet_path({}, 0.0, grid, model, rng);
  std::vector<double> T(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    switch (kind) {
      case ClockKind::Inverse: T[i] = path[i].x; break;
      case ClockKind::Undershoot: T[i] = grid[i] - path[i].g; break;
      case ClockKind::Overshoot: T[i] = grid[i] + path[i].R; break;
    }
  }
  // g can round above t for t near 0; keep the clock admissible
  double lo = 0.0;
  for (double& v : T) {
    v = std::max(v, lo);
    lo = v;
  }
  return T;
}

TimeChangedSample sample_time_changed(const FellerSpec& spec, const levy::LevyModel& model, ClockKind kind,
                                      std::span<const double> grid, Rng& rng) {
  Rng clock_rng = make_stream(rng(), 0);
  Rng proc_rng = make_stream(rng(), 1);
  TimeChangedSample out;
  out.times.assign(grid.begin(), grid.end());
  out.inner_times = sample_clock(model, kind, grid, clock_rng);
  out.values = sample_feller_at(spec, out.inner_times, proc_rng);
  return out;
}

double pruitt_h(const FellerSpec& spec, double r) {
  if (!(r > 0.0)) throw DomainError("Pruitt function needs r > 0");
  switch (spec.variant) {
    case Variant::Brownian:
      return spec.diffusion.trace() / (r * r);
    case Variant::IsotropicStable: {
      const double a = spec.alpha_M;
      // radial integral split at the kink |z| = r, both pieces are power laws
      const double inner = std::pow(r, -a) / (2.0 - a);
      const double outer = std::pow(r, -a) / a;
      return stable_levy_constant(spec.d, a) * sphere_area(spec.d) * (inner + outer);
    }
    default:
      throw UnsupportedError("condition check unavailable for this process variant");
  }
}

double overshoot_moment(const levy::LevyModel& m) {
  double s = m.zeta.first_moment_above(1.0);
  if (m.r > 1.0) {
    if (std::isinf(m.r) && m.q == 0.0) return kInf;
    const double c = m.theta * m.alpha / std::tgamma(1.0 - m.alpha);
    s += c * numeric::integrate([&](double h) { return std::exp(-m.q * h) * std::pow(h, -m.alpha); }, 1.0, m.r);
  }
  return s;
}

MomentReport check_moment_conditions(const FellerSpec& spec, const levy::LevyModel& model, ClockKind kind,
                                     double p, double t) {
  if (!(p >= 0.0)) throw DomainError("growth exponent must be nonnegative");
  if (!(t > 0.0)) throw DomainError("time must be positive");
  MomentReport rep;
  switch (spec.variant) {
    case Variant::Brownian:
      rep.tail_2p = rep.tail_3p = 0.0;
      break;
    case Variant::IsotropicStable:
      rep.tail_2p = stable_tail_moment(spec.d, spec.alpha_M, 2.0 * p);
      rep.tail_3p = stable_tail_moment(spec.d, spec.alpha_M, 3.0 * p);
      break;
    default:
      throw UnsupportedError("condition check unavailable for this process variant");
  }
  bool clock_ok = true;
  if (kind == ClockKind::Overshoot) {
    rep.overshoot_integral = overshoot_moment(model);
    if (!std::isfinite(rep.overshoot_integral)) {
      clock_ok = false;
      rep.reasons.push_back("overshoot clock: int_1^inf h nu(dh) diverges");
    }
  }
  const bool levy_part = spec.variant == Variant::IsotropicStable;
  if (levy_part && p >= 1.0) rep.reasons.push_back("growth exponent p must be below 1 for a jump process");
  const bool p_ok = !levy_part || p < 1.0;
  if (!std::isfinite(rep.tail_2p)) rep.reasons.push_back("int_{|z|>1} |z|^{2p} Pi(dz) diverges");
  if (!std::isfinite(rep.tail_3p)) rep.reasons.push_back("int_{|z|>1} |z|^{3p} Pi(dz) diverges");
  rep.clt_ok = clock_ok && p_ok && std::isfinite(rep.tail_2p);
  rep.berry_esseen_ok = clock_ok && p_ok && std::isfinite(rep.tail_3p);
  return rep;
}

}  // namespace invsub::processes

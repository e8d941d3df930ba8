#include "invsub/stable.hpp"

#include "invsub/errors.hpp"
#include "invsub/numeric.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace invsub::first_passage {

namespace {
constexpr double kPi = std::numbers::pi;
}

double zolotarev_A(double alpha, double u) {
  using numeric::sinc;
  const double a1 = 1.0 - alpha;
  const double la = std::log(alpha * sinc(alpha * u));
  const double lb = std::log(a1 * sinc(a1 * u));
  const double lc = std::log(sinc(u));
  return std::exp(alpha / a1 * la + lb - lc / a1);
}

double zolotarev_A0(double alpha) {
  return (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha));
}

double sample_stable_positive(double alpha, double scale, Rng& rng) {
  const double u = kPi * uniform01(rng);
  const double e = exponential(rng);
  const double s = std::pow(zolotarev_A(alpha, u) / e, (1.0 - alpha) / alpha);
  return std::pow(scale, 1.0 / alpha) * s;
}

double stable_cdf(double alpha, double x) {
  if (x <= 0.0) return 0.0;
  const double y = std::pow(x, -alpha / (1.0 - alpha));
  auto f = [&](double u) { return std::exp(-zolotarev_A(alpha, u) * y); };
  return numeric::integrate(f, 0.0, kPi, 1e-12) / kPi;
}

double stable_pdf(double alpha, double x) {
  if (x <= 0.0) return 0.0;
  const double k = alpha / (1.0 - alpha);
  const double y = std::pow(x, -k);
  auto f = [&](double u) {
    const double a = zolotarev_A(alpha, u);
    return a * std::exp(-a * y);
  };
  return k * y / x * numeric::integrate(f, 0.0, kPi, 1e-12) / kPi;
}

StableBelowSampler::StableBelowSampler(double alpha, double x)
    : alpha_(alpha), x_(x), a0_(zolotarev_A0(alpha)) {
  if (!(x > 0.0)) throw DomainError("conditioning level must be positive");
  y_ = std::pow(x, -alpha / (1.0 - alpha));
  // beyond u_max the density is below e^{-45}
  double umax = kPi;
  if ((zolotarev_A(alpha, kPi * (1 - 1e-12)) - a0_) * y_ > 45.0) {
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((zolotarev_A(alpha, mid) - a0_) * y_ > 45.0 ? hi : lo) = mid;
    }
    umax = hi;
  }
  if (!(umax > 0.0))
    throw SamplerError("conditioning mass too small for numerical inversion", 0, stable_cdf(alpha, x));
  auto f = [this](double u) { return density(u); };
  for (int i = 0; i <= kCells; ++i) node_[i] = umax * i / kCells;
  for (int i = 0; i < kCells; ++i)
    cum_[i + 1] = cum_[i] + numeric::integrate(f, node_[i], node_[i + 1], 1e-13, 31, 6);
  if (!(cum_[kCells] > 0.0) || !std::isfinite(cum_[kCells]))
    throw SamplerError("conditioning mass too small for numerical inversion", 0, stable_cdf(alpha, x));
}

// unnormalised density of U, scaled by exp(A0 y) to avoid underflow
double StableBelowSampler::density(double u) const {
  return std::exp(-(zolotarev_A(alpha_, u) - a0_) * y_);
}

double StableBelowSampler::operator()(Rng& rng) const {
  const double target = uniform01(rng) * cum_[kCells];
  int k = 0;
  while (k < kCells - 1 && cum_[k + 1] < target) ++k;
  const double rem = target - cum_[k];
  auto f = [this](double u) { return density(u); };
  auto g = [&](double u) {
    const double F = boost::math::quadrature::gauss<double, 30>::integrate(f, node_[k], u) - rem;
    return std::make_pair(F, f(u));
  };
  std::uintmax_t it = 100;
  const double mid = 0.5 * (node_[k] + node_[k + 1]);
  const double u = boost::math::tools::newton_raphson_iterate(g, mid, node_[k], node_[k + 1], 42, it);

  double s;
  do {
    const double a = zolotarev_A(alpha_, u);
    const double e = a * y_ + exponential(rng);
    s = std::pow(a / e, (1.0 - alpha_) / alpha_);
  } while (!(s < x_));
  return s;
}

double sample_stable_below_inversion(double alpha, double x, Rng& rng) {
  return StableBelowSampler(alpha, x)(rng);
}

}  // namespace invsub::first_passage

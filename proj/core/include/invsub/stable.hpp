#pragma once

#include "invsub/levy.hpp"
#include "invsub/rng.hpp"

#include <array>

namespace invsub::first_passage {

// Zolotarev's function A(u) on (0, pi) and its limit A(0+).
double zolotarev_A(double alpha, double u);
double zolotarev_A0(double alpha);

// One-sided stable variate with Laplace transform exp(-scale * lambda^alpha),
// i.e. sigma_1 of the theta-scaled stable subordinator when scale = theta.
// Kanter's representation.
double sample_stable_positive(double alpha, double scale, Rng& rng);

// Standard one-sided stable law (scale 1): CDF and density by quadrature of
// the Zolotarev integral.
double stable_cdf(double alpha, double x);
double stable_pdf(double alpha, double x);

// Standard stable S conditioned on S < x, exact via the Kanter
// representation: U is drawn from the density proportional to
// exp(-A(u) x^{-alpha/(1-alpha)}) by numerical inversion.
double sample_stable_below_inversion(double alpha, double x, Rng& rng);

// Same draw with the inversion table built once and reused.
class StableBelowSampler {
 public:
  StableBelowSampler(double alpha, double x);
  double operator()(Rng& rng) const;
  double alpha() const { return alpha_; }
  double level() const { return x_; }

 private:
  static constexpr int kCells = 32;
  double density(double u) const;
  double alpha_, x_, y_, a0_;
  std::array<double, kCells + 1> node_{}, cum_{};
};

}  // namespace invsub::first_passage

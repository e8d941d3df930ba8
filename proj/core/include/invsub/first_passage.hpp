#pragma once

#include "invsub/levy.hpp"
#include "invsub/rng.hpp"
#include "invsub/stable.hpp"

namespace invsub::first_passage {

// (L_t, gamma_t, Gamma_t) at a fixed barrier t, started from sigma_0 = 0.
struct CrossingSample {
  double L = 0.0;
  double gamma = 0.0;  // age t - H_t
  double Gamma = 0.0;  // remaining lifetime D_t - t
};

// Pure stable subordinator with Laplace exponent theta*lambda^alpha.
// Age from the arcsine-type Beta law, overshoot given the age from a Pareto
// law, first-passage time given the undershoot from the polynomially tilted
// stable law (sampled in Kanter coordinates).
CrossingSample sample_stable_crossing(double t, double alpha, double theta, Rng& rng,
                                      Counters* counters = nullptr);

// Stable subordinator with jumps above `trunc` removed, barrier b <= trunc.
// A stable crossing whose straddling jump exceeds trunc is the first big jump;
// the truncated process restarts from the undershoot.
CrossingSample sample_truncated_stable_crossing(double b, double alpha, double theta, double trunc,
                                                Rng& rng, Counters* counters = nullptr,
                                                std::uint64_t cap = kDefaultIterationCap);

// Same with tempering e^{-qs}: exponential tilting of the untempered process
// on windows of length 1/phi_0(q), accepted by rejection.
CrossingSample sample_tempered_truncated_crossing(double b, double alpha, double theta, double q,
                                                  double trunc, Rng& rng,
                                                  Counters* counters = nullptr,
                                                  std::uint64_t cap = kDefaultIterationCap);

// sigma_E of the (tempered) stable part truncated at model.r, conditioned on
// sigma_E < b. Needs b <= r. Rejection first, numerical inversion when the
// acceptance over 10^3 proposals is below 10^-3.
double sample_conditional_small(double E, double b, const levy::LevyModel& model, Rng& rng,
                                Counters* counters = nullptr,
                                std::uint64_t cap = kDefaultIterationCap);

// q = 0 recursion with decomposition at the running level; t > r is split into
// ceil(t/r) equal sub-barriers chained with the triplet kernel.
CrossingSample sample_truncated_crossing(double t, const levy::LevyModel& model, Rng& rng,
                                         Counters* counters = nullptr,
                                         std::uint64_t cap = kDefaultIterationCap);

// q >= 0 recursion with clocks of the finite part zeta and barrier min(t - v, r).
CrossingSample sample_tempered_crossing(double t, const levy::LevyModel& model, Rng& rng,
                                        Counters* counters = nullptr,
                                        std::uint64_t cap = kDefaultIterationCap);

// Picks the closed-form sampler for pure stable models, the q = 0 recursion
// when q = 0 and the tempered recursion otherwise.
CrossingSample sample_crossing(double t, const levy::LevyModel& model, Rng& rng,
                               Counters* counters = nullptr,
                               std::uint64_t cap = kDefaultIterationCap);

// Expected-cost function of the truncated-stable crossing sampler and its
// minimum over (0, A0).
double cost_function(double alpha, double lambda);
double cost_function_as_printed(double alpha, double lambda);
double frak_c(double alpha);

struct CostBounds {
  double frak_c;          // minimum of the cost function
  double bound_simplif;   // ceil(t/r) (frak_c + 9) const(zeta)
  double K_clm;           // tempered sub-sampler bound at level r
  double bound_simplif2;  // ceil(t/r) (K_clm + 5 e^{qr} + 4) const(zeta)
};

// const_zeta and kappa are calibration inputs; bits is the precision N.
CostBounds expected_cost_bounds(const levy::LevyModel& model, double t, double const_zeta = 1.0,
                                double kappa = 1.0, double bits = 53.0);

}  // namespace invsub::first_passage

#include "invsub/tools/oracle.hpp"

#include "invsub/errors.hpp"
#include "invsub/stable.hpp"

#include <cmath>

namespace invsub::tools {

first_passage::CrossingSample oracle_crossing(double t, const levy::LevyModel& m, double step, Rng& rng) {
  if (m.drift != 0.0) throw UnsupportedError("oracle supports driftless models only");
  const double zmass = m.zeta.total_mass();
  double sigma = 0.0, time = 0.0;
  for (;;) {
    // near the barrier the step shrinks so that its typical increment stays
    // below 10^-3 of the remaining distance; the floor on the gap keeps
    // increments well above the rounding unit of t
    const double gap = std::max(t - sigma, 1e-10 * t);
    const double dt = std::min(step, std::pow(1e-3 * gap, m.alpha) / m.theta);
    const double scale = std::pow(m.theta * dt, 1.0 / m.alpha);
    double inc;
    for (;;) {
      inc = scale * first_passage::sample_stable_positive(m.alpha, 1.0, rng);
      if (inc >= m.r) continue;
      if (m.q > 0.0 && !(uniform01(rng) < std::exp(-m.q * inc))) continue;
      break;
    }
    if (zmass > 0.0 && uniform01(rng) < zmass * dt) inc += m.zeta.sample(rng);
    time += dt;
    if (sigma + inc > t) return {time, t - sigma, sigma + inc - t};
    sigma += inc;
  }
}

}  // namespace invsub::tools

#include "invsub/rng.hpp"

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include <cmath>

namespace invsub {

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

double uniform01(Rng& rng) {
  for (;;) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double exponential(Rng& rng) { return -std::log(uniform01(rng)); }

double normal(Rng& rng) {
  boost::random::normal_distribution<double> n;
  return n(rng);
}

double gamma_variate(Rng& rng, double shape) {
  boost::random::gamma_distribution<double> g(shape, 1.0);
  return g(rng);
}

double beta_variate(Rng& rng, double a, double b) {
  for (;;) {
    const double x = gamma_variate(rng, a);
    const double y = gamma_variate(rng, b);
    const double s = x + y;
    if (s > 0.0) return x / s;
  }
}

}  // namespace invsub

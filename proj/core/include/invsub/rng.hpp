#pragma once

#include <cstdint>
#include <random>

namespace invsub {

using Rng = std::mt19937_64;

// Independent stream for (seed, index). Used per replica so results do not
// depend on how replicas are spread over workers.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

// Uniform on the open interval (0,1), 53-bit resolution.
double uniform01(Rng& rng);
double exponential(Rng& rng);  // mean 1
double normal(Rng& rng);
double gamma_variate(Rng& rng, double shape);  // unit scale
double beta_variate(Rng& rng, double a, double b);

}  // namespace invsub

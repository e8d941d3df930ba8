#pragma once

#include "invsub/first_passage.hpp"
#include "invsub/levy.hpp"
#include "invsub/rng.hpp"

namespace invsub::tools {

// Brute-force first passage: the subordinator is advanced by increments over
// a fixed step, refined near the barrier down to a gap of 1e-10 t, the path is inverted for L and the straddling step gives
// gamma and Gamma. Each increment is a stable increment redrawn unless it is
// below r and accepted with probability e^{-q X}, plus a zeta jump with
// probability mass(zeta) * step. Biased by O(step).
first_passage::CrossingSample oracle_crossing(double t, const levy::LevyModel& model, double step, Rng& rng);

}  // namespace invsub::tools

#pragma once

#include "hallmild/heat.hpp"

namespace hallmild {

// Adaptive-bisection Duhamel oracle. Independent of the production path:
// hardcoded 5-point Gauss panels refined until parent/children agree, and
// multipliers composed from the spectral-core operators instead of the fused
// loops in the heat module.
SpectralField brute_duhamel(DuhamelKind kind, const Forcing& F, double t, double tol,
                            int max_depth = 24);

}  // namespace hallmild

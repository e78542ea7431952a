#pragma once

#include <utility>
#include <vector>

namespace hallmild {

// Gauss-Legendre nodes/weights on [-1,1], computed by Newton iteration on
// P_n with the usual interlacing initial guesses. Cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

// Nodes/weights mapped to [a,b].
GaussRule gauss_legendre_on(int order, double a, double b);

}  // namespace hallmild

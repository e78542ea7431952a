#pragma once

#include <cstdint>

#include "hallmild/picard.hpp"

namespace hallmild {

// Solenoidal space-time test field Phi(x,t) = phi(x) * eta(t) with a quintic
// eta vanishing (with two derivatives) at t = T. eta(0) = 1.
struct WeakTestField {
    SpectralField phi;  // solenoidal spatial part
    double horizon;     // T

    double eta(double t) const;
    double eta_dot(double t) const;
};

std::vector<WeakTestField> make_weak_test_fields(const Grid& g, double horizon, int count,
                                                 std::uint64_t seed, int max_mode = 2);

struct WeakResiduals {
    std::vector<double> momentum;   // normalized residual per test field
    std::vector<double> induction;
    double max_normalized = 0.0;
};

// Evaluates both sides of the weak formulation on (u,b) with the given test
// fields: spectral inner products in space, composite Gauss panels in time.
WeakResiduals weak_residual(const SpaceTimeField& u, const SpaceTimeField& b,
                            const InitialData& data, const std::vector<WeakTestField>& tests,
                            int quad_order = 8);

}  // namespace hallmild

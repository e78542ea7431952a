#include "hallmild/spacetime.hpp"

#include <algorithm>
#include <cmath>

#include "hallmild/spectral_ops.hpp"

namespace hallmild {

SpectralField SpaceTimeField::sample(double s) const {
    const int ns = n_slices();
    const double pos = (s - t0_) / dt_;
    if (pos < -1e-9 || pos > ns - 1 + 1e-9) throw Error("SpaceTimeField::sample: time out of range");
    if (ns < 4) {
        // Linear fallback for very short fields.
        int i0 = std::clamp(static_cast<int>(std::floor(pos)), 0, ns - 2);
        const double w = pos - i0;
        SpectralField out = slices_[i0];
        out *= (1.0 - w);
        SpectralField hi = slices_[i0 + 1];
        hi *= w;
        out += hi;
        return out;
    }
    int base = static_cast<int>(std::floor(pos)) - 1;
    base = std::clamp(base, 0, ns - 4);
    const double x = pos - base;  // in [~0, 3]
    double w[4];
    // Lagrange weights on nodes {0,1,2,3}.
    w[0] = -(x - 1) * (x - 2) * (x - 3) / 6.0;
    w[1] = x * (x - 2) * (x - 3) / 2.0;
    w[2] = -x * (x - 1) * (x - 3) / 2.0;
    w[3] = x * (x - 1) * (x - 2) / 6.0;
    SpectralField out(grid_, ncomp_);
    for (int j = 0; j < 4; ++j) {
        const auto& src = slices_[base + j].raw();
        auto& dst = out.raw();
        const double wj = w[j];
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += wj * src[i];
    }
    out.is_solenoidal = slices_[base].is_solenoidal;
    return out;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& o) {
    if (n_slices() != o.n_slices()) throw Error("SpaceTimeField: slice count mismatch");
    for (int i = 0; i < n_slices(); ++i) slices_[i] -= o.slices_[i];
    return *this;
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& o) {
    if (n_slices() != o.n_slices()) throw Error("SpaceTimeField: slice count mismatch");
    for (int i = 0; i < n_slices(); ++i) slices_[i] += o.slices_[i];
    return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(double c) {
    for (auto& s : slices_) s *= c;
    return *this;
}

double SpaceTimeField::max_divergence_residual() const {
    double worst = 0.0;
    for (const auto& s : slices_) worst = std::max(worst, divergence_residual(s));
    return worst;
}

}  // namespace hallmild

#pragma once

#include <vector>

#include "hallmild/field.hpp"

namespace hallmild {

// Output-time lattice on [0, t_final] plus the Gauss order used for Duhamel
// panels between consecutive slices.
struct TimeGrid {
    double t_final = 0.1;
    int n_steps = 32;    // number of stored slices, including t = 0
    int quad_order = 8;  // Gauss-Legendre nodes per panel

    void validate() const {
        if (!(t_final > 0.0)) throw Error("TimeGrid: t_final must be positive");
        if (n_steps < 2) throw Error("TimeGrid: n_steps must be >= 2");
        if (quad_order < 4) throw Error("TimeGrid: quad_order must be >= 4");
    }
    double dt() const { return t_final / (n_steps - 1); }
    double time(int i) const { return i * dt(); }
};

// Field sampled on uniform time slices t0 + i*dt, each slice spectral.
class SpaceTimeField {
public:
    SpaceTimeField(Grid grid, int ncomp, double t0, double dt, int n_slices)
        : grid_(grid), ncomp_(ncomp), t0_(t0), dt_(dt) {
        slices_.reserve(n_slices);
        for (int i = 0; i < n_slices; ++i) slices_.emplace_back(grid, ncomp);
    }

    static SpaceTimeField zero_like(const SpaceTimeField& o) {
        return SpaceTimeField(o.grid_, o.ncomp_, o.t0_, o.dt_, o.n_slices());
    }

    const Grid& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    int n_slices() const { return static_cast<int>(slices_.size()); }
    double t0() const { return t0_; }
    double dt() const { return dt_; }
    double time(int i) const { return t0_ + i * dt_; }
    double t_final() const { return time(n_slices() - 1); }

    SpectralField& slice(int i) { return slices_[i]; }
    const SpectralField& slice(int i) const { return slices_[i]; }

    // 4-point Lagrange interpolation of the coefficients in time; stencil is
    // clamped at the ends. s must lie inside [t0, t_final] up to round-off.
    SpectralField sample(double s) const;

    SpaceTimeField& operator-=(const SpaceTimeField& o);
    friend SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
    SpaceTimeField& operator+=(const SpaceTimeField& o);
    SpaceTimeField& operator*=(double c);

    double max_divergence_residual() const;

private:
    Grid grid_;
    int ncomp_;
    double t0_;
    double dt_;
    std::vector<SpectralField> slices_;
};

}  // namespace hallmild

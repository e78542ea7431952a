#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hallmild/spacetime.hpp"

namespace hallmild {

enum class BesovFlavor { IsotropicSpatial, AnisotropicSpaceTime };

// Radial block profile rho(r) = chi(r) - chi(2r) built from a mollified
// plateau chi (1 on r<=1, 0 on r>=2, exp-smoothstep between, tabulated at
// 4096 samples and linearly interpolated). Because every block evaluates the
// same interpolated chi, the dyadic sums telescope exactly:
//   sum_j rho(2^-j r) = 1 for every r > 0 covered by the summation range.
class DyadicProfile {
public:
    explicit DyadicProfile(BesovFlavor flavor);

    BesovFlavor flavor() const { return flavor_; }
    double chi(double r) const;
    double rho(double r) const { return chi(r) - chi(2.0 * r); }

    // phi_hat_j evaluated at a physical frequency pair. The isotropic flavor
    // ignores tau.
    double phi_hat(int j, double k_mag, double tau = 0.0) const;
    // |xi| + sqrt(|tau|) (anisotropic) or |xi| (isotropic).
    double radius(double k_mag, double tau) const;
    double partition_sum(double k_mag, double tau, int j_lo, int j_hi) const;

    static const DyadicProfile& shared(BesovFlavor flavor);

private:
    BesovFlavor flavor_;
    std::vector<double> table_;  // chi samples on [1,2]
};

DyadicProfile build_dyadic_profile(BesovFlavor flavor);

struct BesovSpec {
    double s = 1.0;
    double p = 2.0;        // integrability, (1, inf]
    double q = 2.0;        // summation index, [1, inf]
    BesovFlavor flavor = BesovFlavor::IsotropicSpatial;

    void validate() const;
};

struct JBand {
    int j_min;
    int j_max;
};

struct BlockEntry {
    int j;
    double block_norm;  // ||f * phi_j||_{L^p}
    double weighted;    // 2^{s j} block_norm
};

struct BesovReport {
    BesovSpec spec;
    std::vector<BlockEntry> per_block;
    double total = 0.0;
    JBand band{0, 0};
    int ext_order = -1;        // anisotropic flavor only
    std::string label;         // "spatial" or "E-proxy"
};

// Resolvable dyadic bands.
JBand spatial_band(const Grid& g);
JBand anisotropic_band(const Grid& g, double window_length, int n_window);

// Homogeneous spatial Besov norm: block mask, inverse transform, physical Lp
// per block (spectral Parseval shortcut for p = 2), l^q aggregation.
BesovReport besov_norm_spatial(const SpectralField& f, const BesovSpec& spec,
                               std::optional<JBand> band = std::nullopt);

// Whitney-type reflection extension to negative times:
//   Ef(x,-m*dt) = sum_{j=1}^{k+1} lambda_j f(x, j*m*dt),
// lambda solving sum_j (-j)^l lambda_j = 1 for 0 <= l <= k. The output spans
// [-M*dt, T] with M = floor((n_t-1)/(k+1)) so every evaluation lands exactly
// on the stored lattice.
std::vector<double> extension_coefficients(int k);
SpaceTimeField extension_operator(const SpaceTimeField& f, int k);

// Anisotropic (parabolic) space-time Besov norm of the E-extended, tapered
// field, with Lp taken over the original (0,T] region only. This is an upper
// proxy for the restriction-infimum norm; reports carry the "E-proxy" label.
BesovReport besov_norm_anisotropic(const SpaceTimeField& f, const BesovSpec& spec, int ext_order,
                                   std::optional<JBand> band = std::nullopt);

// ||h_{-s} * f||_{L^p} with F(h_s) = (|k|^2 + i tau)^{-s/2} (principal
// branch, c_s = 1). p = 2 via Plancherel on the extended window; s even with
// p in (1,inf) via the derivative sum; s = 0 is plain Lp. Anything else is
// an unsupported-range error.
double sobolev_norm_parabolic(const SpaceTimeField& f, double s, double p, int ext_order = 2);

// Derivative-sum route (s even, 1 < p < inf): sum over |beta| + 2l = s of
// ||D_t^l D_x^beta f||_{L^p} with ordered derivative tuples. Exposed so the
// two routes can be compared directly.
double sobolev_norm_derivative_path(const SpaceTimeField& f, double s, double p, int ext_order = 2);

// Lorentz L^{p,r} over the (0,T] space-time samples, from the exact
// piecewise-power integral of the decreasing rearrangement.
double lorentz_norm(const SpaceTimeField& f, double p, double r);

// Plain space-time Lp over (0,T] (same sampling convention as the block
// norms and the Lorentz norm).
double spacetime_lp(const SpaceTimeField& f, double p);

}  // namespace hallmild

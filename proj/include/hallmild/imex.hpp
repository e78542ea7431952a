#pragma once

#include <vector>

#include "hallmild/heat.hpp"
#include "hallmild/picard.hpp"

namespace hallmild {

enum class ImexScheme { Euler, Cnab2 };

struct ImexConfig {
    double dt = 1e-3;
    int steps = 100;
    ImexScheme scheme = ImexScheme::Cnab2;
    double c_stab = 0.5;     // stability guard dt * kmax^2 * |b|_inf <= c_stab
    bool dealiasing = true;
    bool diffusion = true;   // integrating factor disabled for ideal-limit checks
    MildTerms terms{};

    void validate() const {
        if (!(dt > 0.0)) throw Error("ImexConfig: dt must be positive");
        if (steps < 1) throw Error("ImexConfig: steps must be >= 1");
        if (!(c_stab > 0.0)) throw Error("ImexConfig: c_stab must be positive");
    }
};

// Direct time stepper for the primitive system: diffusion via the exact
// per-mode integrating factor, nonlinear terms explicit in rotational form
// (a code path disjoint from the mild assembly):
//   momentum : P[ -omega_u x u + omega_b x b ]
//   induction: -curl(omega_b x b) + curl(u x b)
SpectralField imex_nonlinear_u(const SpectralField& u, const SpectralField& b, const MildTerms& terms);
SpectralField imex_nonlinear_b(const SpectralField& u, const SpectralField& b, const MildTerms& terms);

// One step; Cnab2 without history falls back to a Heun (trapezoidal)
// integrating-factor step.
std::pair<SpectralField, SpectralField> imex_step(const SpectralField& u, const SpectralField& b,
                                                  const ImexConfig& cfg);

struct ImexResult {
    SpectralField u;
    SpectralField b;
    double max_divergence = 0.0;
    std::vector<double> energy;  // 0.5(|u|_2^2 + |b|_2^2) after each step
    std::vector<std::pair<double, SpectralField>> u_samples;  // at requested times
    std::vector<std::pair<double, SpectralField>> b_samples;
};

// Marches cfg.steps steps of size cfg.dt from (u0,b0); records states whose
// time matches one of sample_times (within dt/2).
ImexResult imex_run(const SpectralField& u0, const SpectralField& b0, const ImexConfig& cfg,
                    const std::vector<double>& sample_times = {});

struct CrossValidateReport {
    double t = 0.0;
    double rel_l2_u = 0.0;
    double rel_l2_b = 0.0;
    double besov_gap_u = 0.0;  // relative spatial Besov-norm gap
    double besov_gap_b = 0.0;
    double tol_model = 0.0;
    bool pass = false;
    std::string note;
};

// Mild (Picard fixed point) vs IMEX state at a matched time. tol_model
// combines the time-stepper envelope 5*dt^2 with ten times the Duhamel
// quadrature tolerance estimate.
CrossValidateReport cross_validate(const SpectralField& mild_u, const SpectralField& mild_b,
                                   const SpectralField& imex_u, const SpectralField& imex_b,
                                   double t, double dt, double quad_tol);

}  // namespace hallmild

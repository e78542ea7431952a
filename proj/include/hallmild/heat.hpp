#pragma once

#include <functional>
#include <utility>

#include "hallmild/spacetime.hpp"

namespace hallmild {

// Heat semigroup e^{tL}: exact per-mode multiplier exp(-|k|^2 t). t >= 0.
SpectralField heat_propagate(const SpectralField& f, double t);

// Mode-wise multiplier shapes of the Duhamel convolutions.
//   Plain    : identity (any component count)
//   Grad     : tensor T (9) -> vector, -i k_j T_{ij}   (Duhamel of -div T)
//   GradProj : Grad followed by the Leray projection, zero mode annihilated
//   Hess     : tensor G (9) -> vector, eps_{ijk} k_j k_l G_{kl}
//              (Duhamel of -curl(div G); carries the Hall term with G = b⊗b)
//   Curl     : vector v (3) -> vector, i k × v          (Duhamel of +curl v)
enum class DuhamelKind { Plain, Grad, GradProj, Hess, Curl };

SpectralField apply_duhamel_multiplier(DuhamelKind kind, const SpectralField& forcing);

using Forcing = std::function<SpectralField(double)>;

// Composite Gauss-Legendre evaluation of
//   int_0^t M(k) exp(-|k|^2 (t-s)) F(k,s) ds
// split at the slice times of `quad`; a trailing partial panel covers
// [last slice < t, t]. Gauss nodes are interior, so t-s > 0 at every node.
SpectralField duhamel(DuhamelKind kind, const Forcing& F, double t, const TimeGrid& quad);

// Term toggles for limit checks (Navier-Stokes limit, symmetry probes).
struct MildTerms {
    bool convection = true;
    bool lorentz = true;
    bool hall = true;
    bool induction = true;
};

// Bilinear Hall operator: Duhamel of the Hess pattern applied to b1 ⊗ b2.
SpectralField hall_operator_T(const SpaceTimeField& b1, const SpaceTimeField& b2, double t,
                              const TimeGrid& quad);

// Momentum / induction forcing snapshots from iterate samples at one time.
// momentum: u⊗u - b⊗b (9 components, dealiased); induction pieces are the
// Hall tensor b⊗b and the cross product u×b.
SpectralField momentum_forcing(const SpectralField& u_s, const SpectralField& b_s,
                               const MildTerms& terms);
SpectralField hall_forcing(const SpectralField& b_s);
SpectralField induction_cross_forcing(const SpectralField& u_s, const SpectralField& b_s);

// Full mild right-hand sides at one output time (single-output path; the
// iteration uses mild_step below, which is algebraically identical).
SpectralField mild_rhs_u(const SpaceTimeField& u, const SpaceTimeField& b, const SpectralField& u0,
                         double t, const TimeGrid& quad, const MildTerms& terms = {});
SpectralField mild_rhs_b(const SpaceTimeField& u, const SpaceTimeField& b, const SpectralField& b0,
                         double t, const TimeGrid& quad, const MildTerms& terms = {});

// One full successive-approximation sweep: evaluates the mild right-hand
// sides at every slice of tg, sharing forcing evaluations across output
// times. Slice 0 equals (u0, b0) exactly.
std::pair<SpaceTimeField, SpaceTimeField> mild_step(const SpaceTimeField& u_prev,
                                                    const SpaceTimeField& b_prev,
                                                    const SpectralField& u0, const SpectralField& b0,
                                                    const TimeGrid& tg, const MildTerms& terms = {});

// Pressure recovered from the divergence of the momentum equation
// (spectral Poisson solve; zero mode set to zero).
SpectralField pressure_from_state(const SpectralField& u, const SpectralField& b);

}  // namespace hallmild

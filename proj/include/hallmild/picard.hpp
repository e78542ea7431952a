#pragma once

#include <cstdint>
#include <string>

#include "hallmild/besov.hpp"
#include "hallmild/heat.hpp"

namespace hallmild {

struct InitialData {
    SpectralField u0;
    SpectralField b0;
    std::string family;
    double amplitude = 0.0;
};

struct DataParams {
    int band_lo = 1;        // random-band shell
    int band_hi = 3;
    double bump_width = 0.6;  // concentrated-bump Gaussian width
};

// Families: taylor-green, random-band, concentrated-bump. All solenoidal and
// mean-free, normalized so the pointwise maximum equals `amplitude`.
InitialData make_initial_data(const std::string& family, double amplitude, const Grid& grid,
                              std::uint64_t seed, const DataParams& params = {});

struct SolverConfig {
    double p = 2.0;
    double q = 5.0;
    double alpha = 3.0;
    int n = 32;
    double box_length = 2.0 * M_PI;
    TimeGrid tg{0.1, 32, 8};
    int max_iterations = 40;
    double tol = 1e-9;
    double ceiling = 1e8;
    int ext_order = 2;
    MildTerms terms{};

    void validate() const;
    Grid grid() const { return Grid(n, box_length); }

    // Norm specs of the iteration table. A: B^{5/p-1,*}_{p,5} (both fields),
    // C: B^{5/p,*}_{p,1} (b only), D: B^{alpha-1,*}_{p,q} (u),
    // E: B^{alpha,*}_{p,q} (b).
    BesovSpec spec_A() const { return {5.0 / p - 1.0, p, 5.0, BesovFlavor::AnisotropicSpaceTime}; }
    BesovSpec spec_C() const { return {5.0 / p, p, 1.0, BesovFlavor::AnisotropicSpaceTime}; }
    BesovSpec spec_D() const { return {alpha - 1.0, p, q, BesovFlavor::AnisotropicSpaceTime}; }
    BesovSpec spec_E() const { return {alpha, p, q, BesovFlavor::AnisotropicSpaceTime}; }
};

struct TraceRow {
    int m = 0;
    double u_A = 0, b_A = 0, b_C = 0, u_D = 0, b_E = 0;  // iterate norms
    double dU_A = 0, dB_A = 0, dB_C = 0;                 // difference norms vs m-1
    double triple = 0;                                   // dU_A + dB_A + dB_C
    double rho = 0;                                      // triple_{m+1}/triple_m
    bool has_diff = false;
    bool has_rho = false;
};

struct IterationTrace {
    std::vector<TraceRow> rows;
    JBand band{0, 0};
};

enum class Verdict { Converged, Diverged, MaxIterations };

std::string verdict_name(Verdict v);

struct RunResult {
    Verdict verdict = Verdict::MaxIterations;
    IterationTrace trace;
    SpaceTimeField u;
    SpaceTimeField b;
    int iterations = 0;     // mild sweeps performed
    int converged_at = 0;   // iterate index declared converged
    double final_triple = 0.0;
    double rho_bar = 0.0;   // geometric mean of measured ratios
    double max_divergence = 0.0;  // solenoidality audit over all iterates
};

// u^1, b^1: pure heat flow of the data.
std::pair<SpaceTimeField, SpaceTimeField> first_iterate(const InitialData& data, const TimeGrid& tg);

// One successive-approximation update (wrapper over mild_step with the
// solenoidality precondition checked).
std::pair<SpaceTimeField, SpaceTimeField> picard_step(const SpaceTimeField& u,
                                                      const SpaceTimeField& b,
                                                      const InitialData& data, const TimeGrid& tg,
                                                      const MildTerms& terms = {});

RunResult run(const SolverConfig& config, const InitialData& data);

struct UniquenessReport {
    bool base_converged = false;
    bool perturbed_converged = false;
    double gap = 0.0;  // triple-norm distance between the two fixed points
    bool pass = false;
};

// Restarts the iteration from (u^1 + delta, b^1 + delta); delta must be
// solenoidal. Passes when both runs converge to the same fixed point within
// 10x the solver tolerance.
UniquenessReport uniqueness_probe(const SolverConfig& config, const InitialData& data,
                                  const SpectralField& delta);

struct SmallnessColumn {
    std::string name;
    double sup = 0.0;
    int attained_at = 0;
    double first_value = 0.0;
    bool flagged = false;  // sup exceeds 2x the m=1 value
};

struct SmallnessReport {
    std::vector<SmallnessColumn> columns;
    bool any_flagged = false;
};

SmallnessReport smallness_report(const IterationTrace& trace);

}  // namespace hallmild

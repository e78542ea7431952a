#pragma once

#include <cstdint>
#include <string>

#include "hallmild/besov.hpp"

namespace hallmild {

// One randomized scalar space-time field pair for the inequality battery.
struct BatterySample {
    SpaceTimeField f;
    SpaceTimeField g;
};

struct BatteryConfig {
    int corpus_size = 100;
    int n = 8;               // alternates with 2n across samples
    int n_steps = 16;
    double t_final = 0.4;
    double box_length = 2.0 * M_PI;
    int ext_order = 2;
    double margin = 1.05;    // held-out pass factor
    int min_samples = 20;    // below this the report warns
};

std::vector<BatterySample> make_battery_corpus(const BatteryConfig& cfg, std::uint64_t seed);

struct InequalityResult {
    std::string name;
    double c_fit = 0.0;        // max LHS/RHS over the calibration half
    double holdout_max = 0.0;  // max LHS/RHS over the held-out half
    int evaluated = 0;
    int degenerate = 0;        // RHS ~ 0 with LHS above tolerance
    bool pass = false;
};

struct BatteryReport {
    int corpus_size = 0;
    bool insufficient_samples = false;
    double margin = 0.0;
    std::vector<InequalityResult> rows;
    bool all_pass = false;
};

// Computes LHS/RHS per sample for every implemented inequality (product
// estimates, Lorentz/sup embeddings, derivative lifting, heat-flow and
// Duhamel-gradient estimates), fits the constant on even-indexed samples and
// evaluates the odd-indexed half against c_fit * margin.
BatteryReport estimate_battery(const std::vector<BatterySample>& corpus, const BatteryConfig& cfg);

}  // namespace hallmild

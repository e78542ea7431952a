#pragma once

#include <cstdint>
#include <string>

#include "hallmild/battery.hpp"
#include "hallmild/imex.hpp"
#include "hallmild/picard.hpp"

namespace hallmild {

// Flat key-value configuration with [section] headers. Strict: unknown
// sections or keys, duplicate keys, and type mismatches are rejected with
// line/key diagnostics.
struct RunConfig {
    SolverConfig solver;
    DataParams data_params;
    std::string family = "taylor-green";
    double amplitude = 1e-3;
    std::uint64_t seed = 1234;
    ImexConfig imex;
    BatteryConfig battery;
    std::string output_dir = "out";

    InitialData make_data() const {
        return make_initial_data(family, amplitude, solver.grid(), seed, data_params);
    }
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Round-trip: the flat text form of a config (used in manifests).
std::string config_to_text(const RunConfig& cfg);

}  // namespace hallmild

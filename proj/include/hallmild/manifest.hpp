#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hallmild {

std::string sha256_file(const std::string& path);

// Run manifest: config snapshot, timings, verdicts and a hashed inventory of
// every emitted file. Written atomically (temp file + rename) as the last
// act of a run, so an interrupted run never leaves a manifest claiming
// completeness.
class ExperimentManifest {
public:
    explicit ExperimentManifest(std::string tool_version);

    void set_config_text(const std::string& text);
    void set(const std::string& key, const nlohmann::json& value);
    void add_timing(const std::string& phase, double wall_ms);
    void add_file(const std::string& path);  // hashes the file now

    void write_atomic(const std::string& path) const;

private:
    nlohmann::json doc_;
};

}  // namespace hallmild

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace bchc {

inline constexpr const char* kVersion = "0.1.0";

// Provenance record written alongside every output file. Re-running the
// recorded command with the recorded parameters reproduces the output
// byte for byte.
struct RunManifest {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::uint64_t lattice_hash = 0;
    bool has_lattice_hash = false;
    double wall_seconds = 0;

    nlohmann::json to_json() const;
    void write_alongside(const std::string& output_path) const;
};

}  // namespace bchc

#include "bchc/manifest.hpp"

#include <fstream>

namespace bchc {

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "bchc";
    j["version"] = kVersion;
    j["command"] = command;
    j["parameters"] = parameters;
    if (has_seed) j["seed"] = seed;
    if (has_lattice_hash) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)lattice_hash);
        j["lattice_hash"] = buf;
    }
    j["wall_seconds"] = wall_seconds;
    return j;
}

void RunManifest::write_alongside(const std::string& output_path) const {
    std::ofstream os(output_path + ".manifest.json");
    os << to_json().dump(2) << "\n";
}

}  // namespace bchc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "alohacorr/csv.hpp"
#include "alohacorr/version.hpp"

namespace alohacorr {

// Reproducibility record written next to every CSV. Re-running the command
// with the manifest's parameters must reproduce the listed digests.
struct RunManifest {
    std::string command;
    std::string version = kVersion;
    std::uint64_t master_seed = 0;
    nlohmann::json parameters;
    std::vector<std::pair<std::string, std::string>> outputs;  // (path, digest)
    double duration_seconds = 0.0;

    nlohmann::json to_json() const {
        nlohmann::json outs = nlohmann::json::array();
        for (const auto& [path, digest] : outputs) {
            outs.push_back({{"path", path}, {"fnv1a64", digest}});
        }
        return {
            {"command", command},
            {"version", version},
            {"master_seed", master_seed},
            {"parameters", parameters},
            {"outputs", outs},
            {"duration_seconds", duration_seconds},
        };
    }
};

inline std::string manifest_path_for(const std::string& csv_path) {
    return csv_path + ".manifest.json";
}

inline void write_manifest(const RunManifest& manifest, const std::string& csv_path) {
    write_file(manifest_path_for(csv_path), manifest.to_json().dump(2) + "\n");
}

// Accepts either a plain parameter object or a previously written manifest
// (whose "parameters" member is then used), so a manifest can drive a re-run.
inline nlohmann::json load_config(const std::string& path) {
    auto parsed = nlohmann::json::parse(read_file(path));
    if (parsed.is_object() && parsed.contains("parameters")) {
        return parsed["parameters"];
    }
    return parsed;
}

}  // namespace alohacorr

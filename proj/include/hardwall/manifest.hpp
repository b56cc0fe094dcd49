#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hardwall {

// Record of one CLI run. `args` is the argument list after the program name with any
// --out pair removed, so a rerun only needs a new output directory.
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> args;
    nlohmann::json parameters = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::string tool_version;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
    nlohmann::json stats = nlohmann::json::object();

    bool operator==(const RunManifest&) const = default;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

const char* tool_version();

}  // namespace hardwall

#include "hardwall/manifest.hpp"

#include <fstream>

#include "hardwall/errors.hpp"

#ifndef HARDWALL_VERSION
#define HARDWALL_VERSION "0.0.0"
#endif

namespace hardwall {

const char* tool_version() {
    return HARDWALL_VERSION;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    nlohmann::json j;
    j["subcommand"] = m.subcommand;
    j["args"] = m.args;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr);
    j["tool_version"] = m.tool_version;
    j["wall_seconds"] = m.wall_seconds;
    j["outputs"] = m.outputs;
    j["stats"] = m.stats;
    return j;
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    try {
        RunManifest m;
        m.subcommand = j.at("subcommand").get<std::string>();
        m.args = j.at("args").get<std::vector<std::string>>();
        m.parameters = j.at("parameters");
        if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.wall_seconds = j.at("wall_seconds").get<double>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.stats = j.at("stats");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    std::ofstream f(path);
    if (!f) throw ValidationError("manifest: cannot write " + path.string());
    f << manifest_to_json(m).dump(2) << "\n";
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("manifest: cannot read " + path.string());
    try {
        return manifest_from_json(nlohmann::json::parse(f));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
}

}  // namespace hardwall

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardwall/audit.hpp"
#include "hardwall/cli.hpp"
#include "hardwall/manifest.hpp"
#include "test_support.hpp"

using namespace hardwall;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hardwall_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run(std::vector<std::string> args, const fs::path& dir, std::string* out_text = nullptr) {
    args.push_back("--out");
    args.push_back(dir.string());
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

json read_json(const fs::path& p) {
    std::ifstream f(p);
    return json::parse(f);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("csv number formatting") {
    CHECK(csv_number(0.1) == "0.10000000000000001");
    CHECK(csv_number(2.0) == "2");
    CHECK(std::stod(csv_number(M_PI)) == M_PI);
}

TEST_CASE("edges") {
    const fs::path dir = fresh_dir("edges");
    REQUIRE(run({"edges", "--alpha", "2", "--sigma", "0.3"}, dir) == kExitOk);
    const json j = read_json(dir / "edges.json");
    CHECK(j["regime"] == "CriticalPinned");
    CHECK(std::abs(j["a"].get<double>() - 0.61773409607026823845) < 1e-13);
    CHECK(std::abs(j["b"].get<double>() - 2.5619043938539851907) < 1e-12);
    CHECK(fs::exists(dir / "edges_manifest.json"));
}

TEST_CASE("density csv") {
    const fs::path dir = fresh_dir("density");
    REQUIRE(run({"density", "--alpha", "2", "--sigma", "1", "--grid", "11"}, dir) == kExitOk);
    std::ifstream f(dir / "density.csv");
    std::string line;
    std::getline(f, line);
    CHECK(line == "x,f");
    int rows = 0;
    while (std::getline(f, line)) ++rows;
    CHECK(rows == 11);
    const RunManifest m = read_manifest(dir / "density_manifest.json");
    CHECK(std::abs(m.stats["b"].get<double>() - 2.5997623142661651062) < 1e-12);
    CHECK(std::abs(m.stats["mass"].get<double>() - 1.0) < 1e-10);
}

TEST_CASE("energy, theta and rate") {
    const fs::path dir = fresh_dir("energy");
    REQUIRE(run({"energy", "--alpha", "0", "--sigma", "0"}, dir) == kExitOk);
    CHECK(std::abs(read_json(dir / "energy.json")["energy"].get<double>() - 1.6458797346140277) < 1e-10);
    REQUIRE(run({"theta", "--alpha", "0"}, dir) == kExitOk);
    CHECK(std::abs(read_json(dir / "theta.json")["theta"].get<double>() - std::log(3.0) / 4.0) < 1e-10);
    REQUIRE(run({"rate", "--side", "left", "--alpha", "0", "--x", "-2"}, dir) == kExitOk);
    const json r = read_json(dir / "rate.json");
    CHECK(std::abs(r["rate"].get<double>() - 1.0656799507071038) < 1e-12);
    CHECK(std::abs(r["beta_exponent"].get<double>() - 1.0656799507071038) < 1e-12);
    REQUIRE(run({"rate", "--side", "right", "--alpha", "0", "--from", "-2", "--to", "1", "--grid", "7"}, dir) == kExitOk);
    CHECK(fs::exists(dir / "rate_right.csv"));
}

TEST_CASE("exit codes") {
    const fs::path dir = fresh_dir("codes");
    CHECK(run({"edges", "--alpha", "-1"}, dir) == kExitValidation);
    CHECK(run({"edges", "--alpha", "1", "--sigma", "-1"}, dir) == kExitValidation);
    CHECK(run({"nonsense"}, dir) == kExitValidation);
    CHECK(run({"rate", "--side", "up", "--x", "1"}, dir) == kExitValidation);
    CHECK(run({"approx", "--n", "65"}, dir) == kExitValidation);
    CHECK(run({"rate", "--side", "left", "--alpha", "2", "--x", "1"}, dir) == kExitValidation);
}

TEST_CASE("output directory from the environment") {
    const fs::path dir = fresh_dir("env");
    ::setenv(kOutDirEnv, dir.string().c_str(), 1);
    std::ostringstream out, err;
    const int code = run_cli({"theta", "--alpha", "0.1"}, out, err);
    ::unsetenv(kOutDirEnv);
    CHECK(code == kExitOk);
    CHECK(fs::exists(dir / "theta.json"));
}

TEST_CASE("manifest round trip") {
    RunManifest m;
    m.subcommand = "sample";
    m.args = {"sample", "--n", "8"};
    m.parameters = {{"n", 8}, {"sigma", "-inf"}};
    m.seed = 42;
    m.tool_version = tool_version();
    m.wall_seconds = 0.25;
    m.outputs = {"a.csv"};
    m.stats = {{"l1", 0.01}};
    CHECK(manifest_from_json(manifest_to_json(m)) == m);
    const fs::path dir = fresh_dir("manifest");
    write_manifest(dir / "m.json", m);
    CHECK(read_manifest(dir / "m.json") == m);
}

TEST_CASE("sample replay is bit-identical") {
    const fs::path first = fresh_dir("sample_a");
    const fs::path second = fresh_dir("sample_b");
    REQUIRE(run({"sample", "--alpha", "0.5", "--sigma", "0", "--n", "8", "--sweeps", "2000", "--bins", "12",
                 "--replicas", "2", "--seed", "7"},
                first) == kExitOk);
    const RunManifest m = read_manifest(first / "sample_manifest.json");
    CHECK(m.seed == std::optional<std::uint64_t>(7));
    CHECK(std::find(m.args.begin(), m.args.end(), "--out") == m.args.end());
    REQUIRE(run({"replay", "--from-manifest", (first / "sample_manifest.json").string()}, second) == kExitOk);
    for (const char* name : {"sample_histogram.csv", "sample_overlay.csv", "sample_min_series.csv", "sample_summary.json"})
        CHECK(slurp(first / name) == slurp(second / name));
    const RunManifest again = read_manifest(second / "sample_manifest.json");
    CHECK(again.stats == m.stats);
    CHECK(again.args == m.args);
}

TEST_CASE("approx") {
    const fs::path dir = fresh_dir("approx");
    REQUIRE(run({"approx", "--n", "5", "--mu", "2.5", "--grid", "50"}, dir) == kExitOk);
    const RunManifest m = read_manifest(dir / "approx_manifest.json");
    CHECK(std::abs(m.stats["mass"].get<double>() - 1.0) < 1e-8);
    CHECK(fs::exists(dir / "approx_curve.csv"));
    REQUIRE(run({"approx", "--alpha", "0", "--n-list", "5,9"}, dir) == kExitOk);
    CHECK(fs::exists(dir / "approx_convergence.csv"));
}

TEST_CASE("audit report lists every required key") {
    const fs::path dir = fresh_dir("audit");
    REQUIRE(run({"audit"}, dir) == kExitOk);
    const std::string text = slurp(dir / "discrepancy_report.md");
    for (const auto& key : required_discrepancy_keys()) CHECK(text.find(key) != std::string::npos);
}

}

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hardwall {

// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitSolver = 3,
    kExitTuning = 4,
    kExitPrecision = 5,
};

// Environment variable naming the default output directory (else the working directory).
inline constexpr const char* kOutDirEnv = "HARDWALL_OUT_DIR";

// Subcommands: edges, density, energy, theta, rate, sample, approx, audit, replay.
// Each run writes its artifacts and a <subcommand>_manifest.json into the output directory
// and prints a summary to `out`. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Fixed 17-significant-digit formatting used for every CSV cell.
std::string csv_number(double v);

}  // namespace hardwall

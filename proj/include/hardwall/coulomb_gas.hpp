#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hardwall/density.hpp"

namespace hardwall {

// Metropolis chain over n scaled eigenvalues lambda_i >= sigma with unnormalized log density
//   beta [ sum_i (mu_n log lambda_i - (n/2) lambda_i^2) + sum_{i<j} log|lambda_i - lambda_j| ],
// mu_n = round(alpha n).
struct GasChain {
    EnsembleParams params;
    int n = 0;
    int mu_n = 0;
    std::vector<double> positions;
    double step_width = 0.1;
    std::uint64_t rng_seed = 0;
    std::mt19937_64 rng;
    std::normal_distribution<double> normal{0.0, 1.0};
    std::uniform_real_distribution<double> uniform{0.0, 1.0};
    std::vector<int> order;
    std::uint64_t accepted = 0;
    std::uint64_t proposed = 0;
    std::uint64_t sweeps = 0;

    double acceptance() const { return proposed ? static_cast<double>(accepted) / proposed : 0.0; }
};

int mu_for(double alpha, int n);

// Full evaluation; -infinity when a position violates the wall (or is <= 0 for alpha > 0).
double gas_log_density(const std::vector<double>& positions, int n, const EnsembleParams& params);

// Change in gas_log_density when coordinate i moves to y, in O(n).
double proposal_log_ratio(const GasChain& chain, int i, double y);

// Chain initialised at the quantiles (k + 1/2)/n of `init`, or uniformly on
// [max(sigma, 0.01), sigma + 2] when no density is given ([-1, 1] without a wall).
GasChain make_chain(const EnsembleParams& params, int n, std::uint64_t seed, const DensityEval* init = nullptr);

// One proposal per coordinate, in a fresh random order.
void metropolis_sweep(GasChain& chain);

struct SpectralHistogram {
    std::vector<double> edges;         // bins + 1 entries
    std::vector<double> counts;        // samples per bin
    double in_range = 0.0;             // samples inside [edges.front(), edges.back()]
    double total = 0.0;                // all recorded samples
    int excluded_bins = 0;             // leading bins left out of the L1 comparison (wall)
    std::vector<double> analytic_mass; // limiting density mass per bin
    double l1 = 0.0;                   // sum over compared bins of |empirical - analytic| mass
    double acceptance = 0.0;           // production acceptance rate
    double step_width = 0.0;
    double min_mean = 0.0;             // average of min lambda over recorded snapshots
    std::uint64_t snapshots = 0;

    // Normalised estimate count / (in_range * width); integrates to 1 over the binned range.
    std::vector<double> density() const;
    std::vector<double> centers() const;
};

inline constexpr int kThinning = 10;
inline constexpr int kTuneEvery = 50;

// Runs the chain with the step width tuned during burn-in towards 25-40% acceptance,
// records every kThinning-th sweep afterwards, and compares with the limiting density.
// TuningFailure if the production acceptance lies outside [0.1, 0.6].
SpectralHistogram run_and_histogram(const EnsembleParams& params, int n, int sweeps, int burn_in,
                                    std::uint64_t seed, int bins);

// Per-replica series of min lambda after burn-in (sweeps / 10), thinned by kThinning.
// Replica r uses seed + r. Replicas run in parallel; see kernels.hpp for the serial path.
std::vector<std::vector<double>> min_eigenvalue_samples(const EnsembleParams& params, int n, int replicas,
                                                        int sweeps, std::uint64_t seed);

// Single replica, used by both execution paths.
std::vector<double> min_eigenvalue_series(const EnsembleParams& params, int n, int sweeps, std::uint64_t seed);

// Tuned burn-in shared by the drivers above.
void tune_step(GasChain& chain, int burn_in);

// Limiting-density mass on [x1, x2].
double interval_mass(const DensityEval& d, double x1, double x2);

}  // namespace hardwall

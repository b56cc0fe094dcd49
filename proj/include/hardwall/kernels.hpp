#pragma once

#include <cstdint>
#include <vector>

#include "hardwall/coulomb_gas.hpp"
#include "hardwall/exec.hpp"
#include "hardwall/orthopoly.hpp"
#include "hardwall/potential.hpp"

namespace hardwall {

// Density at each x; 0 outside the open support.
std::vector<double> density_grid(const DensityEval& d, const std::vector<double>& xs, Exec exec);

// U + Q/2 - C at each x with U by direct quadrature.
std::vector<double> equilibrium_residual_grid(const PotentialEval& p, const std::vector<double>& xs, Exec exec);

// f_n at each x (> 0).
std::vector<double> finite_n_grid(const OrthoBasis& basis, const std::vector<double>& xs, Exec exec);

// Min-eigenvalue series of independent replicas seeded seed + r.
std::vector<std::vector<double>> min_eigenvalue_replicas(const EnsembleParams& params, int n, int replicas,
                                                         int sweeps, std::uint64_t seed, Exec exec);

// Uniform grid of `count` points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace hardwall

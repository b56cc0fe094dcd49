#pragma once

#include <string>

#include "hardwall/core_model.hpp"

namespace hardwall {

enum class RegimeTag { CriticalPinned, WallPinned, FreeSemicircle };

const char* to_string(RegimeTag tag);

struct Regime {
    RegimeTag tag = RegimeTag::FreeSemicircle;
    EnsembleParams params;
};

struct SupportSolution {
    Regime regime;
    EdgePair edges;
    double residual_psi = 0.0;        // psi(b, a)
    double residual_phi_slack = 0.0;  // phi(b, a), must not be negative
};

// Unique b > a with psi(b, a) = 0. Safeguarded Newton on a bracket whose upper end
// is a + (2/sqrt 3) sqrt(2 alpha + 2) + 1, widened by doubling when a < 0 (the bound
// does not hold there). Relative tolerance 1e-12 or better.
double solve_b(double a, double alpha);

// Closed form of solve_b for alpha = 0.
double solve_b_alpha0(double a);

// Regime and support edges. Ties sigma == a_c resolve to CriticalPinned.
SupportSolution classify(const EnsembleParams& params);

}  // namespace hardwall

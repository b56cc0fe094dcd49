#pragma once

#include <limits>

namespace hardwall {

// Largest alpha accepted by validation.
inline constexpr double kAlphaMax = 1e6;

// Constrained ensemble: weight |x|^(beta*mu) exp(-beta/2 x^2) per eigenvalue,
// all scaled eigenvalues conditioned to lie above the wall sigma.
// sigma = -infinity is allowed for alpha = 0 and means no wall.
struct EnsembleParams {
    double alpha = 0.0;
    double beta = 2.0;
    double sigma = -std::numeric_limits<double>::infinity();

    // Throws ValidationError.
    void validate() const;
};

struct EdgePair {
    double a = 0.0;
    double b = 0.0;
    double width() const { return b - a; }
};

// x + a - 2 alpha / sqrt(a x)
double phi(double x, double a, double alpha);

// 3/4 (x-a)^2 + a (x-a) + 2 alpha sqrt(a/x) - 2 alpha - 2
double psi(double x, double a, double alpha);

// Partial derivative of psi with respect to x.
double psi_dx(double x, double a, double alpha);

// Lower critical edge for alpha > 0, in (0, sqrt(alpha)).
double a_crit(double alpha);

// Upper critical edge given a_c = a_crit(alpha).
double b_crit(double alpha, double a_c);

// Independent bisection solve of phi = psi = 0; debug oracle for a_crit.
double a_crit_oracle(double alpha);

}  // namespace hardwall

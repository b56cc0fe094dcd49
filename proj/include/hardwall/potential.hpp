#pragma once

#include <complex>
#include <vector>

#include "hardwall/density.hpp"
#include "hardwall/exec.hpp"

namespace hardwall {

// Q(x) = x^2 - 2 alpha log x. DomainError for x <= 0 when alpha > 0.
double external_potential(double x, double alpha);

struct PotentialEval {
    DensityEval density;
    double robin = 0.0;  // C in U + Q/2 = C on the support
};

// Robin constant checked by both routes; returns the closed form.
PotentialEval make_potential(const DensityEval& d);

// G(z) = z - alpha/z - g(z), g(z) = sqrt((z-b)/(z-a)) (z + (b-a)/2 - alpha sqrt(a/b)/z).
// Principal square root of the ratio gives the branch with g(z) ~ z at infinity.
std::complex<double> cauchy_transform(std::complex<double> z, const DensityEval& d);

// Integral of density(x) / (z - x) by quadrature.
std::complex<double> cauchy_transform_quadrature(std::complex<double> z, const DensityEval& d);

// Piecewise closed form: -Q/2 + C on the support plus the off-support correction
// integrals. Beyond b + 10 it falls back to the direct quadrature, where the closed
// form would cancel catastrophically.
double log_potential(double x, const PotentialEval& p);
double log_potential(double x, const DensityEval& d);

// -Integral of log|x - t| density(t) dt.
double log_potential_quadrature(double x, const DensityEval& d);

// C = -(A1 + A2 ((a+b)/2 - alpha/sqrt(ab)) - 2 Cmu alpha/sqrt(ab)).
double robin_constant_closed(const DensityEval& d);

// C = U(x0) + Q(x0)/2 with U by direct quadrature at the support midpoint.
double robin_constant_quadrature(const DensityEval& d);

// Closed form, after checking agreement with quadrature within 1e-7 (OracleMismatch).
double robin_constant(const DensityEval& d);

// (1/2pi) Integral_a^b sqrt((t-a)(b-t))/t dt = (sqrt b - sqrt a)^2 / 4, checked by quadrature.
double aux_measure_mass(double a, double b);
double aux_measure_mass_quadrature(double a, double b);

struct AsymptoticConstants {
    double A1 = 0.0;   // constant in Int_b^X sqrt((t-a)(t-b)) dt
    double A2 = 0.0;   // constant in Int_b^X sqrt((t-b)/(t-a)) dt
    double Cmu = 0.0;  // constant in the potential of the auxiliary measure; NaN unless a > 0
};

AsymptoticConstants asymptotic_constants(double a, double b);

struct EquilibriumReport {
    double sup_on_support = 0.0;   // max |U + Q/2 - C| on the support grid
    double min_off_support = 0.0;  // min (U + Q/2 - C) on the off-support windows
    int on_points = 0;
    int off_points = 0;
    bool passes = false;
};

// Residuals with U from direct quadrature. Off-support windows: [max(sigma, 0+), a) when
// nonempty and (b, b+5]. Passes iff sup < 1e-6 and min >= -1e-8.
EquilibriumReport equilibrium_check(const PotentialEval& p, int grid_size, Exec exec = Exec::Parallel);

// Grid used by equilibrium_check, exposed for the parallel kernels.
struct EquilibriumGrid {
    std::vector<double> on;
    std::vector<double> off;
};
EquilibriumGrid equilibrium_grid(const DensityEval& d, int grid_size);
double equilibrium_residual(double x, const PotentialEval& p);

}  // namespace hardwall

#pragma once

#include "hardwall/edge_solver.hpp"
#include "hardwall/quadrature.hpp"

namespace hardwall {

enum class DensityForm { WallForm, PinnedForm, Semicircle, ReflectedWallForm };

const char* to_string(DensityForm form);

// Limiting density on (a, b). When `mirrored` is set the stored solution is the
// positive-side problem with wall -sigma and the density lives on (-b, -a).
struct DensityEval {
    SupportSolution solution;
    DensityForm form = DensityForm::Semicircle;
    bool mirrored = false;

    double alpha() const { return solution.regime.params.alpha; }
    // Edges of the unmirrored problem.
    double a() const { return solution.edges.a; }
    double b() const { return solution.edges.b; }
    // Actual support.
    double lo() const { return mirrored ? -b() : a(); }
    double hi() const { return mirrored ? -a() : b(); }
    // Shape before mirroring.
    DensityForm base_form() const { return form == DensityForm::ReflectedWallForm ? DensityForm::WallForm : form; }
    // 2 alpha sqrt(a/b) for the wall form, alpha / sqrt(ab) for the pinned form.
    double wall_coeff() const;
    double pinned_coeff() const;
};

DensityEval make_density(const SupportSolution& solution);
DensityEval make_density(const EnsembleParams& params);

// Builds a density of the given shape on arbitrary edges, without solving for them.
// Used for degenerate-limit tests; the result is a probability density only when the
// edges solve the constraint equations.
DensityEval make_density_raw(DensityForm form, double alpha, double a, double b);

// Density at x in the open support; DomainError otherwise.
double eval_density(double x, const DensityEval& d);

// Unmirrored abscissa x = a + (b-a) sin^2(t), t in [0, pi/2].
double theta_abscissa(double t, const DensityEval& d);

// density(x(t)) dx/dt with the endpoint singularities cancelled analytically.
double theta_weight(double t, const DensityEval& d);

enum class Rule { GaussKronrod, TanhSinh };

// Integral of h(x) density(x) over the support, via the sin^2 substitution.
// h receives the actual (possibly mirrored) abscissa.
double expect(const DensityEval& d, const RealFn& h, Rule rule = Rule::GaussKronrod, double tol = 1e-13);

// Total mass by quadrature. Throws QuadratureFailure if the 1e-10 target is missed.
double normalize_check(const DensityEval& d);

// Closed-form second moment, cross-checked against quadrature (OracleMismatch above 1e-7).
double second_moment(const DensityEval& d);
double second_moment_closed(const DensityEval& d);
double second_moment_quadrature(const DensityEval& d);

// Integral of log(x) against the density; needs a >= 0 and no mirroring.
double log_moment(const DensityEval& d);

// Density of the ensemble conditioned on lambda_max <= sigma: the solution for the wall
// at -sigma, mirrored. Requires sigma < 0, or alpha = 0 with any real sigma.
DensityEval reflect_negative(const EnsembleParams& params);

}  // namespace hardwall

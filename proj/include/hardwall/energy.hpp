#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hardwall/density.hpp"

namespace hardwall {

struct EnergyReport {
    EnsembleParams params;
    RegimeTag regime = RegimeTag::FreeSemicircle;
    EdgePair edges;
    double robin = 0.0;
    double m2 = 0.0;
    double log_moment = 0.0;  // left at 0 when alpha = 0, where it does not enter
    double energy = 0.0;      // robin + m2/2 - alpha log_moment
    std::optional<double> closed_form_energy;
    std::optional<double> discrepancy;  // closed_form_energy - energy
};

// Equilibrium energy from the Robin constant, second moment and log moment, each
// cross-checked by an independent route. Also evaluates the printed closed form
// for the regime when one exists.
EnergyReport energy(const EnsembleParams& params);

// Printed alpha = 0 closed form, valid for sigma >= -sqrt 2.
double energy_alpha0_closed(double sigma);

// Printed closed forms for alpha > 0: wall-pinned (a = sigma) and critical edges.
// Kept for comparison only; they do not agree with the pipeline.
double energy_printed_wall(double alpha, double a, double b);
double energy_printed_critical(double alpha, double a_c, double b_c);

// Equilibrium energy of the unconstrained full-line problem (known closed form).
double energy_fullline(double alpha);

// (E_{alpha, a_c} - E_alpha) / 2, so that log p_n ~ -beta theta n^2.
// For alpha = 0 both energies come from the pipeline.
double theta(double alpha);

// Pushed-side rate per n^2 with beta factored out: E_{alpha, max(sigma, a_c)} - E_{alpha, a_c}.
// For alpha = 0 the reference edge is -sqrt 2 and the printed closed form is checked
// within 1e-7 (OracleMismatch).
double right_rate(double sigma, const EnsembleParams& params);
double right_rate_alpha0_closed(double sigma);

// Pulled-side rate: 2 Integral_x^{a_c} sqrt((b_c - t)(a_c - t)) (1 + alpha/(sqrt(a_c b_c) t)) dt.
// For alpha = 0 (a_c = -sqrt 2) the closed form is checked within 1e-8.
double left_rate(double x, const EnsembleParams& params);
double left_rate_alpha0_closed(double x);

// Printed (xi, r) closed form of the pulled-side rate, evaluated in complex arithmetic
// (real part returned); for alpha = 0, r = 0 and log(r^2 - 1) is complex.
double delta_e_closed(double x, double alpha);

// Leading coefficient of the pulled-side rate: left_rate(x) ~ C0 (a_c - x)^(3/2).
// Derived value: (4/3) sqrt(b_c - a_c) (2r - 1)/(r - 1), r = (b_c + a_c)/(b_c - a_c).
double tail_coefficient(double alpha);
// Printed simplified bracket; agrees with tail_coefficient only at alpha = 0.
double tail_coefficient_printed(double alpha);

// Critical edges for alpha >= 0, with (-sqrt 2, sqrt 2) at alpha = 0.
EdgePair critical_edges(double alpha);

enum class Reference { HalfLine, FullLine };

// Leading-order log probability -(beta/2) n^2 Phi(sigma). HalfLine measures the rate from
// E_{alpha, a_c} (so it vanishes for sigma <= a_c); FullLine measures it from the
// unconstrained full-line energy.
double log_prob_estimate(int n, const EnsembleParams& params, Reference ref = Reference::HalfLine);

struct SlopeAudit {
    double theta_slope_numeric = 0.0;        // forward difference of theta at 0
    double theta_slope_envelope = 0.0;       // -lm_0 - (1 + log 2)/2, lm_0 the alpha = 0 log moment
    double energy_critical_slope = 0.0;      // forward difference of E_{alpha, a_c} at 0
    double fullline_slope = 0.0;             // 1 + log 2
    double printed_first_constant = 0.0;     // stated as about 0.3482
    double printed_first_expression = 0.0;   // its expression, evaluated
    double printed_second_constant = 0.0;    // stated as about 0.6045
    double printed_second_expression = 0.0;  // its expression, evaluated
    double implied_theta_slope = 0.0;        // -(1 + log 2 - second)/2
    double example_secant_slope = 0.0;       // (0.3174 - log(3)/4)/0.1
};

SlopeAudit small_alpha_slope_audit();

}  // namespace hardwall

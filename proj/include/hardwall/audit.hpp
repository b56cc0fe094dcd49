#pragma once

#include <string>
#include <vector>

namespace hardwall {

// One internal inconsistency of the published formulas, with the value computed here.
struct Discrepancy {
    std::string key;
    std::string topic;
    std::string printed;       // the value or expression as printed
    double printed_value = 0.0;
    double computed = 0.0;     // reference value from this library
    std::string detail;
};

// Keys the report must contain; the build-time generator fails without them.
const std::vector<std::string>& required_discrepancy_keys();

std::vector<Discrepancy> discrepancy_report();

// Markdown table plus notes. Throws Error if a required key is missing or a value is not finite.
std::string render_discrepancy_report(const std::vector<Discrepancy>& report);

// Constant term of Integral_b^X sqrt((t-a)(t-b))/t dt - X + ((a+b)/2) log X as X -> inf,
// by quadrature; equals -2 Cmu.
double log_auxiliary_constant(double a, double b);

// Mass of the wall-form density when its 1/x coefficient is alpha sqrt(a/b) instead of
// 2 alpha sqrt(a/b), by quadrature; closed form 1 + (alpha/2)(1 - sqrt(a/b)).
double wall_form_mass_with_coeff(double alpha, double a, double b, double coeff);

}  // namespace hardwall

#include "hardwall/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hardwall/energy.hpp"
#include "hardwall/errors.hpp"
#include "hardwall/potential.hpp"

namespace hardwall {

namespace {

std::string fmt(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace

double log_auxiliary_constant(double a, double b) {
    const double h = (a + b) / 2.0;
    // t = b + (1 - s)/s maps (0, 1] onto [b, inf). The integrand sqrt((t-a)(t-b))/t - 1 + h/t
    // is rewritten as (ab - h^2) / (t (sqrt((t-a)(t-b)) + t - h)) and scaled by s^2.
    const double k = a * b - h * h;
    const RealFn f = [&](double s) {
        const double ts = b * s + (1.0 - s);
        const double tas = (b - a) * s + (1.0 - s);
        const double us = 1.0 - s;
        const double ths = (b - h) * s + (1.0 - s);
        return k / (ts * (std::sqrt(tas * us) + ths));
    };
    return integrate_ts(f, 0.0, 1.0, 1e-13) - b + h * std::log(b);
}

double wall_form_mass_with_coeff(double alpha, double a, double b, double coeff) {
    (void)alpha;
    const double w = b - a;
    return integrate_gk(
        [&](double t) {
            const double c = std::cos(t);
            const double x = a + w * std::sin(t) * std::sin(t);
            return w / std::numbers::pi * c * c * (2.0 * x + w - coeff / x);
        },
        0.0, std::numbers::pi / 2.0, 1e-13);
}

const std::vector<std::string>& required_discrepancy_keys() {
    static const std::vector<std::string> keys = {
        "small-alpha-first-constant", "small-alpha-second-constant", "small-alpha-slope",
        "critical-energy-alpha0-limit", "critical-energy-example", "wall-density-coefficient",
    };
    return keys;
}

std::vector<Discrepancy> discrepancy_report() {
    std::vector<Discrepancy> out;
    const double ln2 = std::numbers::ln2, ln3 = std::log(3.0);
    const SlopeAudit s = small_alpha_slope_audit();

    out.push_back({"small-alpha-first-constant", "small-alpha constant, first statement", "C ~ 0.3482",
                   s.printed_first_constant, s.printed_first_expression,
                   "the printed expression evaluates to the computed value, not to the stated decimal"});
    out.push_back({"small-alpha-second-constant", "small-alpha constant, second statement", "C ~ 0.6045",
                   s.printed_second_constant, s.printed_second_expression,
                   "differs from the first statement; implied theta'(0) = " + fmt(s.implied_theta_slope)});
    out.push_back({"small-alpha-slope", "theta'(0)", "slopes implied by the two constants and the worked example",
                   s.example_secant_slope, s.theta_slope_numeric,
                   "forward difference of the pipeline theta; envelope value " + fmt(s.theta_slope_envelope) +
                       "; (log 3)/2 = " + fmt(ln3 / 2.0) + "; worked-example secant " + fmt(s.example_secant_slope) +
                       "; pipeline secant over [0, 0.1] " + fmt((theta(0.1) - theta(0.0)) / 0.1)});

    const double e00 = energy(EnsembleParams{0.0, 2.0, 0.0}).energy;
    {
        // At alpha = 0 the closed form keeps only its alpha-free part, evaluated at (0, (2/3) sqrt 6).
        const double b0 = 2.0 / 3.0 * std::sqrt(6.0);
        const double limit = -3.0 * b0 * b0 / 16.0 + 9.0 * b0 * b0 * b0 * b0 / 256.0;
        const double al = 1e-4;
        const EdgePair e = critical_edges(al);
        out.push_back({"critical-energy-alpha0-limit", "critical-edge energy closed form as alpha -> 0",
                       "closed form at alpha = 1e-4", energy_printed_critical(al, e.a, e.b), e00,
                       "the closed form tends to " + fmt(limit, 12) +
                           " while the limit should be E(0, 0) = 3/4 + (1/2) log 2 + (1/2) log 3 = " +
                           fmt(0.75 + ln2 / 2.0 + ln3 / 2.0, 12)});
    }
    {
        const EnergyReport r = energy(EnsembleParams{0.1, 2.0, 0.0});
        out.push_back({"critical-energy-example", "critical-edge energy at alpha = 0.1", "1.869 (worked example)",
                       energy_printed_critical(0.1, r.edges.a, r.edges.b), r.energy,
                       "printed_value is the closed form; the worked-example number 1.869 agrees with the pipeline"});
    }
    for (double sig : {1.0}) {
        const EnergyReport r = energy(EnsembleParams{2.0, 2.0, sig});
        out.push_back({"wall-energy", "wall-pinned energy closed form at alpha = 2, sigma = 1", "closed form",
                       energy_printed_wall(2.0, r.edges.a, r.edges.b), r.energy,
                       "closed form disagrees with the pipeline, whose Robin constant and moments are each checked"});
    }
    {
        const DensityEval d = make_density(EnsembleParams{2.0, 2.0, 1.0});
        const double a = d.a(), b = d.b(), al = d.alpha();
        const double typo = wall_form_mass_with_coeff(al, a, b, al * std::sqrt(a / b));
        out.push_back({"wall-density-coefficient", "wall-form density 1/x coefficient",
                       "alpha sqrt(a/b) instead of 2 alpha sqrt(a/b)", typo,
                       wall_form_mass_with_coeff(al, a, b, d.wall_coeff()),
                       "mass at alpha = 2, sigma = 1 with each coefficient; closed form of the printed variant " +
                           fmt(1.0 + al / 2.0 * (1.0 - std::sqrt(a / b)), 12)});
    }
    for (double al : {0.1, 2.0}) {
        out.push_back({"tail-coefficient-" + fmt(al, 3), "pulled-side tail coefficient C0 at alpha = " + fmt(al, 3),
                       "simplified bracket", tail_coefficient_printed(al), tail_coefficient(al),
                       "the two agree only at alpha = 0, where C0 = 2^(11/4)/3 = " + fmt(std::pow(2.0, 2.75) / 3.0, 12)});
    }
    out.push_back({"theta0-decimal", "theta(0) decimal expansion", "(log 3)/4 = 0.2764...", 0.2764, theta(0.0),
                   "digits transposed; the exact value is (log 3)/4"});
    {
        const EdgePair e = critical_edges(2.0);
        const double a = e.a, b = e.b;
        const double L = std::log((b - a) / 4.0);
        const double sa = std::sqrt(a), sb = std::sqrt(b);
        const double cmu = (a + b) / 4.0 * (1.0 - L) - sa * sb / 2.0 * std::log((sb + sa) / (sb - sa));
        const double flipped = -(a + b) / 2.0 * (1.0 - L) + sa * sb * std::log((sb - sa) / (sb + sa));
        out.push_back({"aux-log-constant-sign", "constant of the auxiliary log integral at alpha = 2 critical edges",
                       "sqrt(ab) log((sqrt b - sqrt a)/(sqrt b + sqrt a)) term", flipped, log_auxiliary_constant(a, b),
                       "the quadrature constant equals -2 Cmu = " + fmt(-2.0 * cmu, 12) +
                           "; the printed assembly flips the sign of the logarithm"});
    }
    return out;
}

std::string render_discrepancy_report(const std::vector<Discrepancy>& report) {
    for (const auto& key : required_discrepancy_keys()) {
        const auto it = std::find_if(report.begin(), report.end(), [&](const Discrepancy& d) { return d.key == key; });
        if (it == report.end()) throw Error("discrepancy report: missing entry " + key);
    }
    for (const auto& d : report)
        if (!std::isfinite(d.computed) || !std::isfinite(d.printed_value))
            throw Error("discrepancy report: non-finite value in " + d.key);
    std::ostringstream os;
    os << "# Discrepancy report\n\n"
       << "Inconsistencies between printed formulas and values computed by this library. "
       << "They are recorded, not corrected.\n\n"
       << "| key | topic | printed | printed value | computed |\n"
       << "|---|---|---|---|---|\n";
    for (const auto& d : report)
        os << "| " << d.key << " | " << d.topic << " | " << d.printed << " | " << fmt(d.printed_value, 12) << " | "
           << fmt(d.computed, 12) << " |\n";
    os << "\n## Notes\n\n";
    for (const auto& d : report) os << "- `" << d.key << "`: " << d.detail << "\n";
    return os.str();
}

}  // namespace hardwall

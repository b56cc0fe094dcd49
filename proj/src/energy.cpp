#include "hardwall/energy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "hardwall/errors.hpp"
#include "hardwall/potential.hpp"

namespace hardwall {

using std::numbers::ln2;
using std::numbers::sqrt2;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ln3() { return std::log(3.0); }

}  // namespace

EnergyReport energy(const EnsembleParams& params) {
    const SupportSolution s = classify(params);
    const DensityEval d = make_density(s);
    EnergyReport r;
    r.params = params;
    r.regime = s.regime.tag;
    r.edges = s.edges;
    r.robin = robin_constant(d);
    r.m2 = second_moment(d);
    r.log_moment = params.alpha > 0.0 ? log_moment(d) : 0.0;
    r.energy = r.robin + r.m2 / 2.0 - params.alpha * r.log_moment;
    if (params.alpha == 0.0) {
        r.closed_form_energy = s.regime.tag == RegimeTag::FreeSemicircle ? 0.75 + ln2 / 2.0
                                                                          : energy_alpha0_closed(params.sigma);
    } else if (s.regime.tag == RegimeTag::WallPinned) {
        r.closed_form_energy = energy_printed_wall(params.alpha, s.edges.a, s.edges.b);
    } else {
        r.closed_form_energy = energy_printed_critical(params.alpha, s.edges.a, s.edges.b);
    }
    r.discrepancy = *r.closed_form_energy - r.energy;
    return r;
}

double energy_alpha0_closed(double sigma) {
    if (sigma < -sqrt2) throw DomainError("energy_alpha0_closed: needs sigma >= -sqrt 2");
    const double s2 = sigma * sigma;
    const double root = std::sqrt(6.0 + s2);
    return (81.0 + 72.0 * s2 - 2.0 * s2 * s2 + (30.0 * sigma + 2.0 * sigma * s2) * root
            - 108.0 * std::log((root - sigma) / 6.0)) / 108.0;
}

namespace {

double acosh_ratio(double x) {
    // log((sqrt x + sqrt(x-1)) / (sqrt x - sqrt(x-1)))
    const double p = std::sqrt(x);
    const double q = std::sqrt(x - 1.0);
    return std::log((p + q) / (p - q));
}

double printed_psi(double a, double b, double x) {
    const double s = std::sqrt(x * (x - 1.0));
    return (-2.0 * (x + s) * acosh_ratio(x) + s * std::log(4.0) + x * std::log(4.0 * x * (x - 1.0))) / (2.0 * x)
           + (0.5 - 0.5 * std::sqrt((x - 1.0) / x)) * std::log(b - a);
}

double printed_phi_wall(double a, double b, double x) {
    const double t = b - a;
    const double L = std::log(t / 4.0);
    return t * t / 8.0 * (4.0 * x - 3.0) * std::sqrt((x - 1.0) / x) + acosh_ratio(x) / 2.0
           + 1.0 / (2.0 * std::sqrt(x * (x - 1.0))) * (1.5 - 3.0 * x + (3.0 - 2.0 * x) * L)
           + t / 4.0 * (2.0 - 2.0 * x + 2.0 * std::sqrt((x - 1.0) * x) + 2.0 * std::log(1.0 + std::sqrt((x - 1.0) / x))
                        + std::log(x) - (1.0 + std::log(4.0)));
}

double printed_phi_critical(double a, double b, double x) {
    const double t = b - a;
    return (1.0 - 4.0 * ln2) / 16.0 + t * t / 8.0 * (4.0 * x - 3.0) * std::sqrt((x - 1.0) / x) + acosh_ratio(x) / 2.0
           + t * t / 4.0 * (std::log(t) / 2.0 - 2.0 * x + 2.0 * x * x + (1.0 - 2.0 * x) * std::sqrt((x - 1.0) * x)
                            + 2.0 * std::log(std::sqrt(x) + std::sqrt(x - 1.0)));
}

double cubic_part(double a, double b) {
    return (b - a) / 256.0 * (15 * a * a * a + 27 * a * a * b + 13 * a * b * b + 9 * b * b * b);
}

}  // namespace

double energy_printed_wall(double alpha, double a, double b) {
    const double L = std::log((b - a) / 4.0);
    const double x = b / (b - a);
    return -(a * a + 6 * a * b + b * b + 2 * (a - b) * (a - b) * L - 4 * (b + a) * (b + a) + 4 * (b * b - a * a) * L) / 16.0
           + cubic_part(a, b) - alpha * printed_phi_wall(a, b, x) - alpha * alpha * printed_psi(a, b, x);
}

double energy_printed_critical(double alpha, double a, double b) {
    const double L = std::log((b - a) / 4.0);
    const double x = b / (b - a);
    return -(3 * a * a + 8 * a * b + 3 * b * b - 4 * a * b * L) / 16.0 + cubic_part(a, b)
           - alpha * printed_phi_critical(a, b, x) - alpha * alpha * printed_psi(a, b, x);
}

double energy_fullline(double alpha) {
    if (alpha < 0.0) throw DomainError("energy_fullline: needs alpha >= 0");
    const double base = 0.75 + ln2 / 2.0;
    if (alpha == 0.0) return base;
    return base + (1.5 + ln2) * alpha + alpha * alpha * std::log(2.0 * alpha)
           - (alpha * alpha + alpha + 0.25) * std::log1p(2.0 * alpha);
}

double theta(double alpha) {
    if (alpha < 0.0) throw DomainError("theta: needs alpha >= 0");
    const double pinned = energy({alpha, 2.0, 0.0}).energy;
    const double free = alpha == 0.0 ? energy({0.0, 2.0, -kInf}).energy : energy_fullline(alpha);
    return (pinned - free) / 2.0;
}

EdgePair critical_edges(double alpha) {
    if (alpha < 0.0) throw DomainError("critical_edges: needs alpha >= 0");
    if (alpha == 0.0) return {-sqrt2, sqrt2};
    const double a = a_crit(alpha);
    return {a, b_crit(alpha, a)};
}

double right_rate_alpha0_closed(double sigma) {
    if (sigma <= -sqrt2) return 0.0;
    const double s2 = sigma * sigma;
    const double root = std::sqrt(s2 + 6.0);
    return (36.0 * s2 - s2 * s2 + (15.0 * sigma + sigma * s2) * root
            + 27.0 * (std::log(18.0) - 2.0 * std::log(root - sigma))) / 54.0;
}

double right_rate(double sigma, const EnsembleParams& params) {
    EnsembleParams p = params;
    p.sigma = sigma;
    p.validate();
    const double alpha = params.alpha;
    if (alpha > 0.0) {
        if (sigma <= a_crit(alpha)) return 0.0;
        return energy(p).energy - energy({alpha, params.beta, 0.0}).energy;
    }
    if (sigma <= -sqrt2) return 0.0;
    const double pipeline = energy(p).energy - energy({0.0, params.beta, -kInf}).energy;
    const double closed = right_rate_alpha0_closed(sigma);
    if (std::abs(pipeline - closed) > 1e-7) throw OracleMismatch("right_rate", pipeline, closed);
    return pipeline;
}

double left_rate_alpha0_closed(double x) {
    if (x > -sqrt2) throw DomainError("left_rate_alpha0_closed: needs x <= -sqrt 2");
    const double root = std::sqrt(std::max(x * x - 2.0, 0.0));
    return ln2 - x * root - 2.0 * std::log(-x + root);
}

double left_rate(double x, const EnsembleParams& params) {
    const double alpha = params.alpha;
    const EdgePair e = critical_edges(alpha);
    const double a = e.a;
    const double w = e.b - e.a;
    if (alpha > 0.0 && !(x > 0.0 && x <= a)) throw DomainError("left_rate: needs 0 < x <= a_c");
    if (alpha == 0.0 && !(x <= a)) throw DomainError("left_rate: needs x <= -sqrt 2");
    const double k = alpha > 0.0 ? alpha / std::sqrt(e.a * e.b) : 0.0;
    // t = a_c - u^2 removes the square-root endpoint.
    auto f = [&](double u) {
        const double t = a - u * u;
        double shape = 1.0;
        if (alpha > 0.0) shape += k / t;
        return 2.0 * u * u * std::sqrt(w + u * u) * shape;
    };
    const double quad = 2.0 * integrate_gk(f, 0.0, std::sqrt(a - x), 1e-13);
    if (alpha == 0.0) {
        const double closed = left_rate_alpha0_closed(x);
        if (std::abs(quad - closed) > 1e-8 * std::max(1.0, std::abs(closed)))
            throw OracleMismatch("left_rate", quad, closed);
    }
    return quad;
}

double delta_e_closed(double x, double alpha) {
    using C = std::complex<double>;
    const EdgePair e = critical_edges(alpha);
    const double a = e.a;
    const double b = e.b;
    const C xi = (2.0 * x - b - a) / (b - a);
    const C r = (b + a) / (b - a);
    const C one = 1.0;
    const C s = std::sqrt(xi * xi - one);
    const C rr = r * r - one;
    const C t1 = (a - b) * (a - b) / 4.0 * (-xi * s - std::log(-xi + s));
    const double d2 = (a * a - b * b) / 2.0;
    if (d2 == 0.0) return t1.real();
    const C t2 = d2 * (s - 1.5 * std::sqrt(rr) * std::log(rr) + r * std::log(-xi + s));
    const C t3 = -d2 * std::sqrt(rr)
                 * std::log((-one - r * xi + std::sqrt(rr * (xi * xi - one))) / ((r + xi) * std::pow(rr, 1.5)));
    return (t1 + t2 + t3).real();
}

double tail_coefficient(double alpha) {
    const EdgePair e = critical_edges(alpha);
    const double r = (e.b + e.a) / (e.b - e.a);
    return 4.0 / 3.0 * std::sqrt(e.b - e.a) * (2.0 * r - 1.0) / (r - 1.0);
}

double tail_coefficient_printed(double alpha) {
    const EdgePair e = critical_edges(alpha);
    const double r = (e.b + e.a) / (e.b - e.a);
    const double s5 = std::sqrt(5.0);
    return std::sqrt(e.b - e.a) * (4.0 / 3.0 + r * (r - 2.0 - s5) * (r - 2.0 + s5) / (6.0 * (r - 1.0)));
}

double log_prob_estimate(int n, const EnsembleParams& params, Reference ref) {
    if (n < 1) throw ValidationError("log_prob_estimate: needs n >= 1");
    params.validate();
    double rate = 0.0;
    if (ref == Reference::HalfLine || params.alpha == 0.0) {
        rate = right_rate(params.sigma, params);
    } else {
        const double sigma = std::max(params.sigma, 0.0);
        rate = energy({params.alpha, params.beta, sigma}).energy - energy_fullline(params.alpha);
    }
    const double nn = static_cast<double>(n);
    return -(params.beta / 2.0) * nn * nn * rate;
}

SlopeAudit small_alpha_slope_audit() {
    SlopeAudit s;
    const double h = 1e-6;
    const double e0 = energy({0.0, 2.0, 0.0}).energy;
    const double eh = energy({h, 2.0, 0.0}).energy;
    s.energy_critical_slope = (eh - e0) / h;
    s.theta_slope_numeric = (theta(h) - theta(0.0)) / h;
    const double lm0 = log_moment(make_density(EnsembleParams{0.0, 2.0, 0.0}));
    s.fullline_slope = 1.0 + ln2;
    s.theta_slope_envelope = -lm0 - s.fullline_slope / 2.0;
    const double r6 = std::sqrt(6.0);
    const double bracket = -36.0 * (-6.0 + r6) + (54.0 - 161.0 * r6) * ln2 + 27.0 * (10.0 + r6) * ln3();
    s.printed_first_constant = 0.3482;
    s.printed_first_expression = 0.5 + ln2 / 2.0 - bracket / 864.0;
    s.printed_second_constant = 0.6045;
    s.printed_second_expression = bracket / 432.0;
    s.implied_theta_slope = -(1.0 + ln2 - s.printed_second_expression) / 2.0;
    s.example_secant_slope = (0.3174 - ln3() / 4.0) / 0.1;
    return s;
}

}  // namespace hardwall

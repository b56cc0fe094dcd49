#include "hardwall/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardwall/errors.hpp"

namespace hardwall {

using std::numbers::pi;

const char* to_string(DensityForm form) {
    switch (form) {
        case DensityForm::WallForm: return "WallForm";
        case DensityForm::PinnedForm: return "PinnedForm";
        case DensityForm::Semicircle: return "Semicircle";
        case DensityForm::ReflectedWallForm: return "ReflectedWallForm";
    }
    return "?";
}

double DensityEval::wall_coeff() const {
    const double al = alpha();
    return al > 0.0 ? 2.0 * al * std::sqrt(a() / b()) : 0.0;
}

double DensityEval::pinned_coeff() const {
    const double al = alpha();
    return al > 0.0 ? al / std::sqrt(a() * b()) : 0.0;
}

DensityEval make_density(const SupportSolution& solution) {
    DensityEval d;
    d.solution = solution;
    switch (solution.regime.tag) {
        case RegimeTag::CriticalPinned: d.form = DensityForm::PinnedForm; break;
        case RegimeTag::WallPinned: d.form = DensityForm::WallForm; break;
        case RegimeTag::FreeSemicircle: d.form = DensityForm::Semicircle; break;
    }
    return d;
}

DensityEval make_density(const EnsembleParams& params) {
    return make_density(classify(params));
}

DensityEval make_density_raw(DensityForm form, double alpha, double a, double b) {
    if (!(a < b)) throw DomainError("make_density_raw: need a < b");
    if (alpha > 0.0 && !(a > 0.0)) throw DomainError("make_density_raw: alpha > 0 needs a > 0");
    DensityEval d;
    d.form = form == DensityForm::ReflectedWallForm ? DensityForm::WallForm : form;
    d.solution.edges = {a, b};
    d.solution.regime.params = {alpha, 2.0, alpha > 0.0 ? a : -std::numeric_limits<double>::infinity()};
    d.solution.regime.tag = form == DensityForm::PinnedForm ? RegimeTag::CriticalPinned
                          : form == DensityForm::Semicircle ? RegimeTag::FreeSemicircle
                                                            : RegimeTag::WallPinned;
    d.solution.residual_psi = psi(b, a, alpha);
    d.solution.residual_phi_slack = phi(b, a, alpha);
    return d;
}

double eval_density(double x, const DensityEval& d) {
    if (!(x > d.lo() && x < d.hi())) {
        std::ostringstream os;
        os.precision(17);
        os << "eval_density: x=" << x << " outside open support (" << d.lo() << ", " << d.hi() << ")";
        throw DomainError(os.str());
    }
    const double y = d.mirrored ? -x : x;
    const double a = d.a();
    const double b = d.b();
    switch (d.base_form()) {
        case DensityForm::WallForm: {
            double shape = 2.0 * y + b - a;
            if (d.alpha() > 0.0) shape -= d.wall_coeff() / y;
            return std::sqrt((b - y) / (y - a)) * shape / (2.0 * pi);
        }
        case DensityForm::PinnedForm: {
            double shape = 1.0;
            if (d.alpha() > 0.0) shape += d.pinned_coeff() / y;
            return std::sqrt((b - y) * (y - a)) * shape / pi;
        }
        default:
            return std::sqrt((b - y) * (y - a)) / pi;
    }
}

double theta_abscissa(double t, const DensityEval& d) {
    const double s = std::sin(t);
    return d.a() + (d.b() - d.a()) * s * s;
}

double theta_weight(double t, const DensityEval& d) {
    const double w = d.b() - d.a();
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double x = d.a() + w * s * s;
    switch (d.base_form()) {
        case DensityForm::WallForm: {
            double shape = 2.0 * x + w;
            if (d.alpha() > 0.0) shape -= d.wall_coeff() / x;
            return w * c * c * shape / pi;
        }
        case DensityForm::PinnedForm: {
            double shape = 1.0;
            if (d.alpha() > 0.0) shape += d.pinned_coeff() / x;
            return 2.0 * w * w * s * s * c * c * shape / pi;
        }
        default:
            return 2.0 * w * w * s * s * c * c / pi;
    }
}

namespace {

// Where the 1/x factor turns on when the support starts close to 0.
double inner_break(const DensityEval& d) {
    const double ratio = d.a() / (d.b() - d.a());
    if (d.alpha() > 0.0 && ratio > 0.0 && ratio < 0.25) return std::asin(std::sqrt(ratio));
    return 0.0;
}

double run(const RealFn& f, double lo, double hi, Rule rule, double tol) {
    return rule == Rule::GaussKronrod ? integrate_gk(f, lo, hi, tol) : integrate_ts(f, lo, hi, tol);
}

}  // namespace

double expect(const DensityEval& d, const RealFn& h, Rule rule, double tol) {
    const double sign = d.mirrored ? -1.0 : 1.0;
    auto f = [&](double t) { return h(sign * theta_abscissa(t, d)) * theta_weight(t, d); };
    const double brk = inner_break(d);
    if (brk > 0.0) return run(f, 0.0, brk, rule, tol) + run(f, brk, pi / 2, rule, tol);
    return run(f, 0.0, pi / 2, rule, tol);
}

double normalize_check(const DensityEval& d) {
    return expect(d, [](double) { return 1.0; }, Rule::GaussKronrod, 1e-11);
}

double second_moment_closed(const DensityEval& d) {
    if (d.base_form() == DensityForm::Semicircle) return 0.5;
    const double a = d.a();
    const double b = d.b();
    const double tilt = d.alpha() > 0.0 ? 16.0 * d.alpha() * std::sqrt(a / b) * (3.0 * a + b) : 0.0;
    return (b - a) / 128.0 * (15 * a * a * a + 27 * a * a * b + 13 * a * b * b + 9 * b * b * b - tilt);
}

double second_moment_quadrature(const DensityEval& d) {
    return expect(d, [](double x) { return x * x; });
}

double second_moment(const DensityEval& d) {
    const double closed = second_moment_closed(d);
    const double quad = second_moment_quadrature(d);
    if (std::abs(closed - quad) > 1e-7) throw OracleMismatch("second_moment", closed, quad);
    return closed;
}

double log_moment(const DensityEval& d) {
    if (d.mirrored || d.a() < 0.0) throw DomainError("log_moment: support must lie in [0, inf)");
    const double a = d.a();
    const double w = d.b() - a;
    // For a = 0, log x = log w + 2 log sin t stays finite down to the smallest t.
    RealFn f = [&](double t) {
        const double s = std::sin(t);
        const double lx = a == 0.0 ? std::log(w) + 2.0 * std::log(s) : std::log(a + w * s * s);
        return lx * theta_weight(t, d);
    };
    const double brk = inner_break(d);
    if (brk > 0.0) return integrate_ts(f, 0.0, brk, 1e-12) + integrate_ts(f, brk, pi / 2, 1e-12);
    return integrate_ts(f, 0.0, pi / 2, 1e-12);
}

DensityEval reflect_negative(const EnsembleParams& params) {
    if (params.alpha > 0.0 && !(params.sigma < 0.0))
        throw ValidationError("reflect_negative: alpha > 0 needs sigma < 0");
    EnsembleParams mirror = params;
    mirror.sigma = -params.sigma;
    DensityEval d = make_density(mirror);
    d.mirrored = true;
    if (d.form == DensityForm::WallForm) d.form = DensityForm::ReflectedWallForm;
    // The mirrored edges must satisfy lo + hi + 2 alpha / sqrt(lo hi) <= 0.
    const double lo = d.lo();
    const double hi = d.hi();
    double cond = lo + hi;
    if (params.alpha > 0.0) cond += 2.0 * params.alpha / std::sqrt(lo * hi);
    if (cond > 1e-10 * std::max(1.0, std::abs(lo) + std::abs(hi)))
        throw BracketFailure("reflect_negative: mirrored edges violate the sign condition");
    return d;
}

}  // namespace hardwall

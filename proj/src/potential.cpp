#include "hardwall/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardwall/errors.hpp"
#include "hardwall/kernels.hpp"

namespace hardwall {

using std::numbers::pi;
using cplx = std::complex<double>;

double external_potential(double x, double alpha) {
    if (alpha == 0.0) return x * x;
    if (!(x > 0.0)) throw DomainError("external_potential: alpha > 0 needs x > 0");
    return x * x - 2.0 * alpha * std::log(x);
}

PotentialEval make_potential(const DensityEval& d) {
    return {d, robin_constant(d)};
}

namespace {

// alpha sqrt(a/b), the coefficient of 1/z in g.
double g_coeff(const DensityEval& d) {
    return d.alpha() > 0.0 ? d.alpha() * std::sqrt(d.a() / d.b()) : 0.0;
}

cplx cauchy_base(cplx z, const DensityEval& d) {
    const double a = d.a();
    const double b = d.b();
    const double al = d.alpha();
    const double c = g_coeff(d);
    const double h = (b - a) / 2.0;
    if (al > 0.0 && z == 0.0) throw DomainError("cauchy_transform: z = 0 with alpha > 0");
    if (z.imag() == 0.0 && z.real() >= a && z.real() <= b) throw DomainError("cauchy_transform: z on the cut");
    const cplx r = std::sqrt((z - b) / (z - a));
    const cplx m = z + h - c / z;
    const cplx p = al > 0.0 ? z - al / z : z;
    if (std::abs(z) < 4.0 * std::max({1.0, std::abs(a), std::abs(b)})) return p - r * m;
    // Far from the support p and r m nearly cancel. Use (p^2 - r^2 m^2)/(p + r m) with the
    // numerator p^2 (z-a) - (z-b) m^2 expanded by hand so that the z^3, z^2 and z^-2
    // terms drop out exactly.
    const double k1 = 2.0 * b * h - h * h + 2.0 * c - 2.0 * al;
    const double k0 = 2.0 * al * a + 2.0 * c * h + b * h * h - 2.0 * b * c;
    const double km1 = al * al - c * c - 2.0 * b * c * h;
    const cplx num = k1 * z + k0 + km1 / z;
    return num / ((z - a) * (p + r * m));
}

}  // namespace

cplx cauchy_transform(cplx z, const DensityEval& d) {
    if (d.mirrored) return -cauchy_base(-z, d);
    return cauchy_base(z, d);
}

cplx cauchy_transform_quadrature(cplx z, const DensityEval& d) {
    const double re = expect(d, [z](double x) { return (1.0 / (z - x)).real(); });
    const double im = expect(d, [z](double x) { return (1.0 / (z - x)).imag(); });
    return {re, im};
}

namespace {

// Integral of density(t) log|y - t| over the unmirrored support.
double log_kernel_integral(double y, const DensityEval& d) {
    const double a = d.a();
    const double b = d.b();
    const double w = b - a;
    if (y > a && y < b) {
        const double t0 = std::asin(std::sqrt((y - a) / w));
        // |y - t| = w |sin(t0 - t)| sin(t0 + t); the endpoint offset gives t0 - t exactly.
        auto piece = [&](double gap, double t) {
            return (std::log(w) + std::log(std::sin(gap)) + std::log(std::sin(t0 + t))) * theta_weight(t, d);
        };
        // tc is b - t on the upper half of each interval and a - t (negative) on the lower half;
        // branch on its sign, since t itself may round across the midpoint.
        RealFn2 left = [&](double t, double tc) { return piece(tc > 0.0 ? tc : t0 - t, t); };
        RealFn2 right = [&](double t, double tc) { return piece(tc < 0.0 ? -tc : t - t0, t); };
        return integrate_ts(left, 0.0, t0, 1e-12) + integrate_ts(right, t0, pi / 2, 1e-12);
    }
    auto f = [&](double t) {
        const double s = std::sin(t);
        const double c = std::cos(t);
        const double dist = y <= a ? (a - y) + w * s * s : (y - b) + w * c * c;
        return std::log(dist) * theta_weight(t, d);
    };
    return integrate_ts(f, 0.0, pi / 2, 1e-12);
}

}  // namespace

double log_potential_quadrature(double x, const DensityEval& d) {
    return -log_kernel_integral(d.mirrored ? -x : x, d);
}

double log_potential(double x, const PotentialEval& p) {
    const DensityEval& d = p.density;
    if (d.mirrored) return log_potential_quadrature(x, d);
    const double a = d.a();
    const double b = d.b();
    const double w = b - a;
    const double al = d.alpha();
    if (al > 0.0 && !(x > 0.0)) throw DomainError("log_potential: alpha > 0 needs x > 0");
    if (x > b + 10.0) return log_potential_quadrature(x, d);
    const double base = -external_potential(x, al) / 2.0 + p.robin;
    const double c = g_coeff(d);
    auto num = [&](double t) { return al > 0.0 ? t + w / 2.0 - c / t : t + w / 2.0; };
    if (x > b) {
        // t = b + u^2
        auto f = [&](double u) { return 2.0 * u * u / std::sqrt(w + u * u) * num(b + u * u); };
        return base + integrate_gk(f, 0.0, std::sqrt(x - b));
    }
    if (x < a) {
        // t = a - u^2
        auto f = [&](double u) { return 2.0 * std::sqrt(w + u * u) * num(a - u * u); };
        return base - integrate_gk(f, 0.0, std::sqrt(a - x));
    }
    return base;
}

double log_potential(double x, const DensityEval& d) {
    if (d.mirrored) return log_potential_quadrature(x, d);
    return log_potential(x, PotentialEval{d, robin_constant_closed(d)});
}

AsymptoticConstants asymptotic_constants(double a, double b) {
    if (!(a < b)) throw DomainError("asymptotic_constants: need a < b");
    const double w = b - a;
    const double L = std::log(w / 4.0);
    AsymptoticConstants k;
    k.A1 = (a * a + 6.0 * a * b + b * b + 2.0 * w * w * L) / 16.0;
    k.A2 = -(a + b) / 2.0 + w / 2.0 * L;
    if (a > 0.0) {
        const double sa = std::sqrt(a);
        const double sb = std::sqrt(b);
        k.Cmu = (a + b) / 4.0 * (1.0 - L) - sa * sb / 2.0 * std::log((sb + sa) / (sb - sa));
    } else {
        k.Cmu = std::numeric_limits<double>::quiet_NaN();
    }
    return k;
}

double robin_constant_closed(const DensityEval& d) {
    if (d.mirrored) throw DomainError("robin_constant: mirrored densities are not supported");
    const double a = d.a();
    const double b = d.b();
    const AsymptoticConstants k = asymptotic_constants(a, b);
    if (d.alpha() == 0.0) return -(k.A1 + k.A2 * (a + b) / 2.0);
    const double q = d.alpha() / std::sqrt(a * b);
    return -(k.A1 + k.A2 * ((a + b) / 2.0 - q) - 2.0 * q * k.Cmu);
}

double robin_constant_quadrature(const DensityEval& d) {
    if (d.mirrored) throw DomainError("robin_constant: mirrored densities are not supported");
    const double x0 = (d.a() + d.b()) / 2.0;
    return log_potential_quadrature(x0, d) + external_potential(x0, d.alpha()) / 2.0;
}

double robin_constant(const DensityEval& d) {
    const double closed = robin_constant_closed(d);
    const double quad = robin_constant_quadrature(d);
    if (std::abs(closed - quad) > 1e-7) throw OracleMismatch("robin_constant", closed, quad);
    return closed;
}

double aux_measure_mass_quadrature(double a, double b) {
    if (!(a > 0.0) || a > b) throw DomainError("aux_measure_mass: need 0 < a <= b");
    if (a == b) return 0.0;
    const double w = b - a;
    auto f = [&](double t) {
        const double s = std::sin(t);
        const double c = std::cos(t);
        return 2.0 * w * w * s * s * c * c / (a + w * s * s);
    };
    return integrate_gk(f, 0.0, pi / 2, 1e-13) / (2.0 * pi);
}

double aux_measure_mass(double a, double b) {
    if (!(a > 0.0) || a > b) throw DomainError("aux_measure_mass: need 0 < a <= b");
    const double s = std::sqrt(b) - std::sqrt(a);
    const double closed = s * s / 4.0;
    const double quad = aux_measure_mass_quadrature(a, b);
    if (std::abs(closed - quad) > 1e-10) throw OracleMismatch("aux_measure_mass", closed, quad);
    return closed;
}

EquilibriumGrid equilibrium_grid(const DensityEval& d, int grid_size) {
    if (d.mirrored) throw DomainError("equilibrium_grid: mirrored densities are not supported");
    const int m = std::max(grid_size, 2);
    const int moff = std::max(m / 2, 1);
    const double a = d.a();
    const double b = d.b();
    EquilibriumGrid g;
    for (int j = 0; j < m; ++j) g.on.push_back(a + (b - a) * (j + 0.5) / m);
    const double sigma = d.solution.regime.params.sigma;
    double left = std::numeric_limits<double>::quiet_NaN();
    if (d.solution.regime.tag == RegimeTag::CriticalPinned) left = std::max(sigma, 0.0);
    if (d.solution.regime.tag == RegimeTag::FreeSemicircle) left = std::isfinite(sigma) ? sigma : a - 5.0;
    if (left < a) {
        for (int j = 0; j < moff; ++j) g.off.push_back(left + (a - left) * (j + 0.5) / moff);
    }
    for (int j = 0; j < moff; ++j) g.off.push_back(b + 5.0 * (j + 1.0) / moff);
    return g;
}

double equilibrium_residual(double x, const PotentialEval& p) {
    return log_potential_quadrature(x, p.density) + external_potential(x, p.density.alpha()) / 2.0 - p.robin;
}

EquilibriumReport equilibrium_check(const PotentialEval& p, int grid_size, Exec exec) {
    const EquilibriumGrid g = equilibrium_grid(p.density, grid_size);
    EquilibriumReport r;
    r.on_points = static_cast<int>(g.on.size());
    r.off_points = static_cast<int>(g.off.size());
    r.min_off_support = std::numeric_limits<double>::infinity();
    for (double v : equilibrium_residual_grid(p, g.on, exec)) r.sup_on_support = std::max(r.sup_on_support, std::abs(v));
    for (double v : equilibrium_residual_grid(p, g.off, exec)) r.min_off_support = std::min(r.min_off_support, v);
    r.passes = r.sup_on_support < 1e-6 && r.min_off_support >= -1e-8;
    return r;
}

}  // namespace hardwall

#include "hardwall/core_model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "hardwall/errors.hpp"

namespace hardwall {

void EnsembleParams::validate() const {
    std::ostringstream why;
    if (!std::isfinite(alpha) || alpha < 0.0) {
        why << "alpha must be finite and >= 0, got " << alpha;
    } else if (alpha > kAlphaMax) {
        why << "alpha above the supported cap " << kAlphaMax << ", got " << alpha;
    } else if (!std::isfinite(beta) || beta <= 0.0) {
        why << "beta must be finite and > 0, got " << beta;
    } else if (std::isnan(sigma) || sigma == std::numeric_limits<double>::infinity()) {
        why << "sigma must be a real number, got " << sigma;
    } else if (alpha > 0.0 && sigma < 0.0) {
        why << "alpha > 0 requires sigma >= 0, got sigma=" << sigma;
    } else {
        return;
    }
    throw ValidationError(why.str());
}

namespace {

void require_positive(double x, double a, double alpha, const char* fn) {
    if (alpha > 0.0 && !(x > 0.0 && a > 0.0)) {
        std::ostringstream os;
        os << fn << ": alpha > 0 needs x > 0 and a > 0 (x=" << x << ", a=" << a << ")";
        throw DomainError(os.str());
    }
}

}  // namespace

double phi(double x, double a, double alpha) {
    require_positive(x, a, alpha, "phi");
    if (alpha == 0.0) return x + a;
    return x + a - 2.0 * alpha / std::sqrt(a * x);
}

double psi(double x, double a, double alpha) {
    require_positive(x, a, alpha, "psi");
    const double d = x - a;
    double v = 0.75 * d * d + a * d - 2.0;
    if (alpha > 0.0) v += 2.0 * alpha * (std::sqrt(a / x) - 1.0);
    return v;
}

double psi_dx(double x, double a, double alpha) {
    require_positive(x, a, alpha, "psi_dx");
    double v = 1.5 * (x - a) + a;
    if (alpha > 0.0) v -= alpha * std::sqrt(a) * std::pow(x, -1.5);
    return v;
}

// The textbook expression sqrt(P - Q) loses every digit as alpha -> 0 because P and Q
// both tend to 4/3. Multiplying through by the conjugates gives
//   a_c^2 = 4.5 alpha^4 / ([1 + 2 alpha + 2.5 alpha^2 + (1 + alpha) gamma] (P + Q)),
// which has no cancellation.
double a_crit(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("a_crit: alpha must be > 0");
    const double g = std::sqrt(1.0 + 2.0 * alpha + 4.0 * alpha * alpha);
    const double p = 5.0 / 3.0 + 5.0 * alpha / 3.0 - g / 3.0;
    const double q = 2.0 / 3.0 * std::sqrt(2.0 + 4.0 * alpha - 4.0 * alpha * alpha + 2.0 * (1.0 + alpha) * g);
    const double conj = 1.0 + 2.0 * alpha + 2.5 * alpha * alpha + (1.0 + alpha) * g;
    const double a4 = alpha * alpha * alpha * alpha;
    return std::sqrt(4.5 * a4 / (conj * (p + q)));
}

double b_crit(double alpha, double a_c) {
    const double rad = 6.0 * (alpha + 1.0) - 2.0 * a_c * a_c;
    if (!(rad >= 0.0)) throw DomainError("b_crit: negative radicand");
    return 2.0 / 3.0 * (std::sqrt(rad) - a_c / 2.0);
}

namespace {

// b > 0 with phi(b, a) = 0; phi is increasing in b.
double solve_phi_for_b(double a, double alpha) {
    double lo = 0.0;
    double hi = 1.0;
    while (phi(hi, a, alpha) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 400 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = std::midpoint(lo, hi);
        if (mid <= 0.0 || phi(mid, a, alpha) < 0.0) lo = mid; else hi = mid;
    }
    return std::midpoint(lo, hi);
}

}  // namespace

double a_crit_oracle(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("a_crit_oracle: alpha must be > 0");
    // psi(b_phi(a), a) is positive as a -> 0+ and equals -2 at a = sqrt(alpha).
    double hi = std::sqrt(alpha);
    double lo = hi * 1e-30;
    auto f = [alpha](double a) { return psi(solve_phi_for_b(a, alpha), a, alpha); };
    if (!(f(lo) > 0.0)) throw BracketFailure("a_crit_oracle: no sign change");
    for (int it = 0; it < 400 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = std::midpoint(lo, hi);
        if (f(mid) > 0.0) lo = mid; else hi = mid;
    }
    return std::midpoint(lo, hi);
}

}  // namespace hardwall

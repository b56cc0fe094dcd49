#include "hardwall/edge_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hardwall/errors.hpp"

namespace hardwall {

const char* to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::CriticalPinned: return "CriticalPinned";
        case RegimeTag::WallPinned: return "WallPinned";
        case RegimeTag::FreeSemicircle: return "FreeSemicircle";
    }
    return "?";
}

double solve_b(double a, double alpha) {
    if (alpha > 0.0 && !(a > 0.0)) throw DomainError("solve_b: alpha > 0 needs a > 0");
    if (!std::isfinite(a)) throw DomainError("solve_b: a must be finite");
    double lo = a;
    double hi = a + 2.0 / std::sqrt(3.0) * std::sqrt(2.0 * alpha + 2.0) + 1.0;
    double flo = psi(lo, a, alpha);
    double fhi = psi(hi, a, alpha);
    // The upper bound assumes a >= 0; for alpha = 0 and a < 0 the root can sit beyond it.
    for (int grow = 0; grow < 60 && !(fhi > 0.0) && a < 0.0; ++grow) {
        hi = a + 2.0 * (hi - a);
        fhi = psi(hi, a, alpha);
    }
    if (!(flo < 0.0 && fhi > 0.0)) {
        std::ostringstream os;
        os << "solve_b: psi has no sign change on [" << lo << ", " << hi << "] for a=" << a
           << " alpha=" << alpha;
        throw BracketFailure(os.str());
    }
    double x = std::midpoint(lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double f = psi(x, a, alpha);
        if (f == 0.0) return x;
        if (f < 0.0) lo = x; else hi = x;
        const double df = psi_dx(x, a, alpha);
        double next = x - f / df;
        if (!(df > 0.0) || !(next > lo && next < hi)) next = std::midpoint(lo, hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) break;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

double solve_b_alpha0(double a) {
    return 2.0 / 3.0 * (std::sqrt(a * a + 6.0) + a / 2.0);
}

SupportSolution classify(const EnsembleParams& params) {
    params.validate();
    SupportSolution s;
    s.regime.params = params;
    const double alpha = params.alpha;
    const double sigma = params.sigma;
    if (alpha > 0.0) {
        const double ac = a_crit(alpha);
        if (sigma <= ac) {
            s.regime.tag = RegimeTag::CriticalPinned;
            s.edges = {ac, b_crit(alpha, ac)};
        } else {
            s.regime.tag = RegimeTag::WallPinned;
            s.edges = {sigma, solve_b(sigma, alpha)};
        }
    } else if (sigma <= -std::sqrt(2.0)) {
        s.regime.tag = RegimeTag::FreeSemicircle;
        s.edges = {-std::sqrt(2.0), std::sqrt(2.0)};
    } else {
        s.regime.tag = RegimeTag::WallPinned;
        s.edges = {sigma, solve_b(sigma, 0.0)};
    }
    s.residual_psi = psi(s.edges.b, s.edges.a, alpha);
    s.residual_phi_slack = phi(s.edges.b, s.edges.a, alpha);
    const double scale = std::max({1.0, std::abs(s.edges.a), std::abs(s.edges.b)});
    if (s.residual_phi_slack < -1e-10 * scale) {
        std::ostringstream os;
        os << "classify: phi slack " << s.residual_phi_slack << " below tolerance";
        throw BracketFailure(os.str());
    }
    return s;
}

}  // namespace hardwall

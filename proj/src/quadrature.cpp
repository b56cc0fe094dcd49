#include "hardwall/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hardwall/errors.hpp"

namespace hardwall {

namespace {

void check(const char* rule, double value, double err, double l1, double tol, double lo, double hi) {
    if (!std::isfinite(value) || err > 10.0 * tol * std::max(1.0, l1)) {
        std::ostringstream os;
        os.precision(17);
        os << rule << " did not converge on [" << lo << ", " << hi << "]: value=" << value
           << " error=" << err << " tol=" << tol;
        throw QuadratureFailure(os.str());
    }
}

}  // namespace

double integrate_gk(const RealFn& f, double lo, double hi, double tol) {
    if (lo == hi) return 0.0;
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, tol, &err, &l1);
    check("gauss-kronrod", v, err, l1, tol, lo, hi);
    return v;
}

namespace {

boost::math::quadrature::tanh_sinh<double>& ts_rule() {
    static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    return rule;
}

}  // namespace

double integrate_ts(const RealFn& f, double lo, double hi, double tol) {
    if (lo == hi) return 0.0;
    auto& rule = ts_rule();
    double err = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    const double v = rule.integrate(f, lo, hi, tol, &err, &l1, &levels);
    check("tanh-sinh", v, err, l1, tol, lo, hi);
    return v;
}

double integrate_ts(const RealFn2& f, double lo, double hi, double tol) {
    if (lo == hi) return 0.0;
    auto& rule = ts_rule();
    double err = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    const double v = rule.integrate(f, lo, hi, tol, &err, &l1, &levels);
    check("tanh-sinh", v, err, l1, tol, lo, hi);
    return v;
}

}  // namespace hardwall

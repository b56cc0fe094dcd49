#pragma once

#include <functional>

namespace hardwall {

using RealFn = std::function<double(double)>;

// f(x, xc) where xc is the signed distance to the nearest endpoint: lo - x in the left
// half, hi - x in the right half. Lets integrands resolve singular endpoints exactly.
using RealFn2 = std::function<double(double, double)>;

// Adaptive Gauss-Kronrod (61 point) on a finite interval. Throws QuadratureFailure
// when the error estimate stays above tol * max(1, L1 norm).
double integrate_gk(const RealFn& f, double lo, double hi, double tol = 1e-12);

// Tanh-sinh on a finite interval; suited to integrable endpoint singularities.
double integrate_ts(const RealFn& f, double lo, double hi, double tol = 1e-12);
double integrate_ts(const RealFn2& f, double lo, double hi, double tol = 1e-12);

}  // namespace hardwall

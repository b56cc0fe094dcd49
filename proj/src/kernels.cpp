#include "hardwall/kernels.hpp"

#include <exception>

#include "hardwall/errors.hpp"

namespace hardwall {

namespace {

// Evaluates f over xs, keeping the first exception raised by any point.
template <class F>
std::vector<double> map_points(const std::vector<double>& xs, Exec exec, F f) {
    const long n = static_cast<long>(xs.size());
    std::vector<double> out(xs.size());
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i) out[i] = f(xs[i]);
        return out;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (...) {
#pragma omp critical(hardwall_map_points)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace

const char* to_string(Exec exec) {
    return exec == Exec::Serial ? "serial" : "parallel";
}

std::vector<double> density_grid(const DensityEval& d, const std::vector<double>& xs, Exec exec) {
    return map_points(xs, exec, [&](double x) { return x > d.lo() && x < d.hi() ? eval_density(x, d) : 0.0; });
}

std::vector<double> equilibrium_residual_grid(const PotentialEval& p, const std::vector<double>& xs, Exec exec) {
    return map_points(xs, exec, [&](double x) { return equilibrium_residual(x, p); });
}

std::vector<double> finite_n_grid(const OrthoBasis& basis, const std::vector<double>& xs, Exec exec) {
    return map_points(xs, exec, [&](double x) { return finite_n_density(x, basis); });
}

std::vector<std::vector<double>> min_eigenvalue_replicas(const EnsembleParams& params, int n, int replicas,
                                                         int sweeps, std::uint64_t seed, Exec exec) {
    if (replicas < 1) throw ValidationError("min_eigenvalue_replicas: replicas must be >= 1");
    params.validate();
    std::vector<std::vector<double>> out(replicas);
    if (exec == Exec::Serial) {
        for (int r = 0; r < replicas; ++r) out[r] = min_eigenvalue_series(params, n, sweeps, seed + r);
        return out;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < replicas; ++r) {
        try {
            out[r] = min_eigenvalue_series(params, n, sweeps, seed + static_cast<std::uint64_t>(r));
        } catch (...) {
#pragma omp critical(hardwall_replicas)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) throw ValidationError("linspace: need at least 2 points");
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1);
    return xs;
}

}  // namespace hardwall

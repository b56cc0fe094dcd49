#include "hardwall/coulomb_gas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hardwall/errors.hpp"
#include "hardwall/kernels.hpp"

namespace hardwall {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool admissible(double x, const EnsembleParams& p) {
    if (!std::isfinite(x) || x < p.sigma) return false;
    return !(p.alpha > 0.0 && x <= 0.0);
}

double to_theta(double x, const DensityEval& d) {
    const double u = d.mirrored ? -x : x;
    const double s = std::clamp((u - d.a()) / (d.b() - d.a()), 0.0, 1.0);
    return std::asin(std::sqrt(s));
}

// Cumulative mass table on a uniform theta grid, for quantile initialisation.
struct ThetaCdf {
    std::vector<double> t, f;
};

ThetaCdf theta_cdf(const DensityEval& d, int panels) {
    ThetaCdf c;
    c.t.resize(panels + 1);
    c.f.resize(panels + 1);
    const double h = (M_PI / 2) / panels;
    double acc = 0.0;
    c.t[0] = 0.0;
    c.f[0] = 0.0;
    for (int k = 0; k < panels; ++k) {
        acc += integrate_gk([&](double t) { return theta_weight(t, d); }, k * h, (k + 1) * h, 1e-12);
        c.t[k + 1] = (k + 1) * h;
        c.f[k + 1] = acc;
    }
    for (double& v : c.f) v /= acc;
    return c;
}

// Unmirrored abscissa at which the unmirrored cumulative mass reaches q.
double theta_quantile(const ThetaCdf& c, const DensityEval& d, double q) {
    const auto it = std::lower_bound(c.f.begin(), c.f.end(), q);
    const std::size_t k = std::clamp<std::size_t>(it - c.f.begin(), 1, c.f.size() - 1);
    const double f0 = c.f[k - 1], f1 = c.f[k];
    const double t = c.t[k - 1] + (c.t[k] - c.t[k - 1]) * (f1 > f0 ? (q - f0) / (f1 - f0) : 0.5);
    return theta_abscissa(t, d);
}

double chain_min(const GasChain& c) {
    return *std::min_element(c.positions.begin(), c.positions.end());
}

}  // namespace

int mu_for(double alpha, int n) {
    return static_cast<int>(std::lround(alpha * n));
}

double gas_log_density(const std::vector<double>& positions, int n, const EnsembleParams& params) {
    const int mu = mu_for(params.alpha, n);
    double single = 0.0;
    for (double x : positions) {
        if (!admissible(x, params)) return kNegInf;
        single += -0.5 * n * x * x;
        if (mu != 0) single += mu * std::log(x);
    }
    double pair = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            pair += std::log(std::abs(positions[i] - positions[j]));
    return params.beta * (single + pair);
}

double proposal_log_ratio(const GasChain& chain, int i, double y) {
    const EnsembleParams& p = chain.params;
    if (!admissible(y, p)) return kNegInf;
    const double x = chain.positions[i];
    double single = -0.5 * chain.n * (y - x) * (y + x);
    if (chain.mu_n != 0) single += chain.mu_n * std::log(y / x);
    // Product of distance ratios with one logarithm; fall back to a sum when it leaves range.
    double prod = 1.0;
    double logsum = 0.0;
    for (int j = 0; j < chain.n; ++j) {
        if (j == i) continue;
        prod *= std::abs(y - chain.positions[j]) / std::abs(x - chain.positions[j]);
        if (!(prod > 1e-280 && prod < 1e280)) {
            if (prod == 0.0) return kNegInf;
            logsum += std::log(prod);
            prod = 1.0;
        }
    }
    return p.beta * (single + logsum + std::log(prod));
}

GasChain make_chain(const EnsembleParams& params, int n, std::uint64_t seed, const DensityEval* init) {
    params.validate();
    if (n < 1) throw ValidationError("make_chain: n must be >= 1");
    GasChain c;
    c.params = params;
    c.n = n;
    c.mu_n = mu_for(params.alpha, n);
    c.rng_seed = seed;
    c.rng.seed(seed);
    c.order.resize(n);
    std::iota(c.order.begin(), c.order.end(), 0);
    c.positions.resize(n);
    if (init) {
        const ThetaCdf cdf = theta_cdf(*init, 256);
        for (int k = 0; k < n; ++k) {
            const double q = (k + 0.5) / n;
            c.positions[k] = init->mirrored ? -theta_quantile(cdf, *init, 1.0 - q) : theta_quantile(cdf, *init, q);
        }
        c.step_width = (init->hi() - init->lo()) / n;
    } else {
        const bool wall = std::isfinite(params.sigma);
        const double lo = wall ? std::max(params.sigma, 0.01) : -1.0;
        const double hi = wall ? params.sigma + 2.0 : 1.0;
        for (int k = 0; k < n; ++k) c.positions[k] = lo + (hi - lo) * (k + 0.5) / n;
        c.step_width = (hi - lo) / n;
    }
    for (double x : c.positions)
        if (!admissible(x, params)) throw ValidationError("make_chain: initial position violates the wall");
    return c;
}

void metropolis_sweep(GasChain& c) {
    std::shuffle(c.order.begin(), c.order.end(), c.rng);
    for (int i : c.order) {
        const double y = c.positions[i] + c.step_width * c.normal(c.rng);
        const double dl = proposal_log_ratio(c, i, y);
        ++c.proposed;
        bool accept = dl >= 0.0;
        if (!accept && dl > kNegInf) accept = std::log(c.uniform(c.rng)) < dl;
        if (accept) {
            c.positions[i] = y;
            ++c.accepted;
        }
    }
    ++c.sweeps;
}

void tune_step(GasChain& c, int burn_in) {
    for (int s = 0; s < burn_in; s += kTuneEvery) {
        const std::uint64_t acc0 = c.accepted, prop0 = c.proposed;
        const int block = std::min(kTuneEvery, burn_in - s);
        for (int k = 0; k < block; ++k) metropolis_sweep(c);
        const double rate = static_cast<double>(c.accepted - acc0) / static_cast<double>(c.proposed - prop0);
        if (rate < 0.25) c.step_width *= 0.8;
        else if (rate > 0.40) c.step_width *= 1.25;
    }
    c.accepted = 0;
    c.proposed = 0;
}

double interval_mass(const DensityEval& d, double x1, double x2) {
    double t1 = to_theta(x1, d), t2 = to_theta(x2, d);
    if (t1 > t2) std::swap(t1, t2);
    if (t2 <= t1) return 0.0;
    return integrate_gk([&](double t) { return theta_weight(t, d); }, t1, t2, 1e-12);
}

std::vector<double> SpectralHistogram::density() const {
    std::vector<double> out(counts.size(), 0.0);
    if (in_range <= 0.0) return out;
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = counts[i] / (in_range * (edges[i + 1] - edges[i]));
    return out;
}

std::vector<double> SpectralHistogram::centers() const {
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = 0.5 * (edges[i] + edges[i + 1]);
    return out;
}

SpectralHistogram run_and_histogram(const EnsembleParams& params, int n, int sweeps, int burn_in,
                                    std::uint64_t seed, int bins) {
    params.validate();
    if (n < 2) throw ValidationError("run_and_histogram: n must be >= 2");
    if (!(sweeps > burn_in) || burn_in < 0) throw ValidationError("run_and_histogram: need sweeps > burn_in >= 0");
    if (bins < 2) throw ValidationError("run_and_histogram: bins must be >= 2");

    const DensityEval d = make_density(params);
    GasChain c = make_chain(params, n, seed, &d);
    tune_step(c, burn_in);

    SpectralHistogram h;
    const double w = d.hi() - d.lo();
    const bool wall = d.solution.regime.tag == RegimeTag::WallPinned;
    double lo = d.lo() - 0.1 * w;
    if (std::isfinite(params.sigma)) lo = std::max(lo, params.sigma);
    if (params.alpha > 0.0) lo = std::max(lo, 0.0);
    if (wall) lo = d.lo();
    const double hi = d.hi() + 0.1 * w;
    h.edges.resize(bins + 1);
    if (wall) {
        const double step = (hi - lo) / (bins - 0.5);
        h.edges[0] = lo;
        for (int i = 1; i <= bins; ++i) h.edges[i] = lo + (i - 0.5) * step;
        h.excluded_bins = 1;
    } else {
        for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
    }
    h.edges[bins] = hi;
    h.counts.assign(bins, 0.0);

    double min_sum = 0.0;
    const double bw_inv = 1.0 / (h.edges[2] - h.edges[1]);
    for (int s = burn_in; s < sweeps; ++s) {
        metropolis_sweep(c);
        if ((s - burn_in + 1) % kThinning != 0) continue;
        for (double x : c.positions) {
            h.total += 1.0;
            if (x < lo || x >= hi) continue;
            int k;
            if (wall) k = x < h.edges[1] ? 0 : 1 + static_cast<int>((x - h.edges[1]) * bw_inv);
            else k = static_cast<int>((x - lo) * bw_inv);
            k = std::clamp(k, 0, bins - 1);
            h.counts[k] += 1.0;
            h.in_range += 1.0;
        }
        min_sum += chain_min(c);
        ++h.snapshots;
    }
    h.min_mean = h.snapshots ? min_sum / h.snapshots : std::numeric_limits<double>::quiet_NaN();
    h.acceptance = c.acceptance();
    h.step_width = c.step_width;

    h.analytic_mass.resize(bins);
    for (int i = 0; i < bins; ++i) h.analytic_mass[i] = interval_mass(d, h.edges[i], h.edges[i + 1]);
    h.l1 = 0.0;
    if (h.in_range > 0.0)
        for (int i = h.excluded_bins; i < bins; ++i) h.l1 += std::abs(h.counts[i] / h.in_range - h.analytic_mass[i]);

    if (h.acceptance < 0.1 || h.acceptance > 0.6) {
        std::ostringstream os;
        os << "run_and_histogram: acceptance " << h.acceptance << " outside [0.1, 0.6] after tuning";
        throw TuningFailure(os.str());
    }
    return h;
}

std::vector<double> min_eigenvalue_series(const EnsembleParams& params, int n, int sweeps, std::uint64_t seed) {
    params.validate();
    if (n < 2) throw ValidationError("min_eigenvalue_series: n must be >= 2");
    if (sweeps < kThinning) throw ValidationError("min_eigenvalue_series: sweeps too small");
    const DensityEval d = make_density(params);
    GasChain c = make_chain(params, n, seed, &d);
    const int burn_in = sweeps / 10;
    tune_step(c, burn_in);
    std::vector<double> series;
    series.reserve((sweeps - burn_in) / kThinning + 1);
    for (int s = burn_in; s < sweeps; ++s) {
        metropolis_sweep(c);
        if ((s - burn_in + 1) % kThinning == 0) series.push_back(chain_min(c));
    }
    if (c.acceptance() < 0.1 || c.acceptance() > 0.6) {
        std::ostringstream os;
        os << "min_eigenvalue_series: acceptance " << c.acceptance() << " outside [0.1, 0.6] after tuning";
        throw TuningFailure(os.str());
    }
    return series;
}

std::vector<std::vector<double>> min_eigenvalue_samples(const EnsembleParams& params, int n, int replicas,
                                                        int sweeps, std::uint64_t seed) {
    return min_eigenvalue_replicas(params, n, replicas, sweeps, seed, Exec::Parallel);
}

}  // namespace hardwall

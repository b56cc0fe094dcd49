#include <cmath>
#include <numeric>
#include <random>

#include "hardwall/coulomb_gas.hpp"
#include "hardwall/errors.hpp"
#include "hardwall/kernels.hpp"
#include "test_support.hpp"

using namespace hardwall;
using namespace hwtest;

TEST_SUITE("coulomb_gas") {

TEST_CASE("mu rounding") {
    CHECK(mu_for(0.0, 32) == 0);
    CHECK(mu_for(0.5, 5) == 3);
    CHECK(mu_for(2.0, 32) == 64);
    CHECK(mu_for(0.1, 32) == 3);
}

TEST_CASE("gas log density by hand") {
    const EnsembleParams free{0.0, 2.0, -kInf};
    CHECK(gas_log_density({0.0}, 1, free) == 0.0);
    CHECK_NEAR(gas_log_density({-1.0, 1.0}, 2, free), 2.0 * (-2.0 + std::log(2.0)), 1e-15);
    CHECK_NEAR(gas_log_density({0.0, 1.0}, 2, free), -2.0, 1e-15);
    const EnsembleParams beta1{0.0, 1.0, -kInf};
    CHECK_NEAR(gas_log_density({0.0, 1.0}, 2, beta1), -1.0, 1e-15);
    const EnsembleParams pinned{1.0, 2.0, 0.0};
    CHECK_NEAR(gas_log_density({2.0}, 1, pinned), 2.0 * (std::log(2.0) - 2.0), 1e-15);
}

TEST_CASE("gas log density symmetry and walls") {
    const EnsembleParams free{0.0, 2.0, -kInf};
    CHECK_NEAR(gas_log_density({-0.3, 0.9, 1.4}, 3, free), gas_log_density({0.3, -0.9, -1.4}, 3, free), 1e-14);
    CHECK_NEAR(gas_log_density({-0.3, 0.9, 1.4}, 3, free), gas_log_density({1.4, -0.3, 0.9}, 3, free), 1e-14);
    CHECK(gas_log_density({-1.0, 0.5}, 2, {0.0, 2.0, 0.0}) == -kInf);
    CHECK(gas_log_density({0.0, 0.5}, 2, {1.0, 2.0, 0.0}) == -kInf);
    CHECK(gas_log_density({0.5, 0.5}, 2, free) == -kInf);
}

TEST_CASE("incremental ratio equals full recomputation") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> z(0.0, 0.3);
    for (const EnsembleParams& p : {EnsembleParams{0.0, 2.0, -kInf}, EnsembleParams{0.0, 1.0, 0.0},
                                    EnsembleParams{0.5, 2.0, 0.0}, EnsembleParams{2.0, 4.0, 1.0}}) {
        for (int n : {2, 3, 5, 8}) {
            GasChain c = make_chain(p, n, 5);
            for (int trial = 0; trial < 20; ++trial) {
                const int i = trial % n;
                const double y = c.positions[i] + z(rng);
                const double base = gas_log_density(c.positions, n, p);
                std::vector<double> moved = c.positions;
                moved[i] = y;
                const double full = gas_log_density(moved, n, p);
                const double inc = proposal_log_ratio(c, i, y);
                if (full == -kInf) {
                    CHECK(inc == -kInf);
                } else {
                    INFO("n=" << n << " alpha=" << p.alpha);
                    CHECK_NEAR(inc, full - base, 1e-10);
                }
            }
        }
    }
}

TEST_CASE("chains are deterministic for a seed") {
    const EnsembleParams p{0.5, 2.0, 0.0};
    GasChain c1 = make_chain(p, 12, 99);
    GasChain c2 = make_chain(p, 12, 99);
    for (int s = 0; s < 200; ++s) {
        metropolis_sweep(c1);
        metropolis_sweep(c2);
    }
    CHECK(c1.positions == c2.positions);
    CHECK(c1.accepted == c2.accepted);
    GasChain c3 = make_chain(p, 12, 100);
    for (int s = 0; s < 200; ++s) metropolis_sweep(c3);
    CHECK(c1.positions != c3.positions);
}

TEST_CASE("zero-width proposals are always accepted and change nothing") {
    GasChain c = make_chain({0.0, 2.0, -kInf}, 6, 3);
    c.step_width = 0.0;
    const std::vector<double> start = c.positions;
    for (int s = 0; s < 10; ++s) metropolis_sweep(c);
    CHECK(c.positions == start);
    CHECK(c.acceptance() == 1.0);
    CHECK(c.sweeps == 10);
    CHECK(c.proposed == 60);
}

TEST_CASE("walls are never crossed") {
    const EnsembleParams p{0.0, 2.0, 0.4};
    GasChain c = make_chain(p, 10, 8);
    c.step_width = 0.5;
    for (int s = 0; s < 500; ++s) {
        metropolis_sweep(c);
        for (double x : c.positions) REQUIRE(x >= 0.4);
    }
}

TEST_CASE("quantile initialisation follows the density") {
    const EnsembleParams p{2.0, 2.0, 1.0};
    const DensityEval d = make_density(p);
    const GasChain c = make_chain(p, 20, 1, &d);
    CHECK(std::is_sorted(c.positions.begin(), c.positions.end()));
    CHECK(c.positions.front() > d.lo());
    CHECK(c.positions.back() < d.hi());
    CHECK_NEAR(interval_mass(d, d.lo(), c.positions[9]), 9.5 / 20.0, 1e-6);
}

TEST_CASE("free gas is centred at zero") {
    GasChain c = make_chain({0.0, 2.0, -10.0}, 16, 21);
    tune_step(c, 1000);
    double sum = 0.0;
    int count = 0;
    for (int s = 0; s < 10000; ++s) {
        metropolis_sweep(c);
        if (s % kThinning == 0) {
            sum += std::accumulate(c.positions.begin(), c.positions.end(), 0.0);
            count += 16;
        }
    }
    CHECK(std::abs(sum / count) < 0.05);
    CHECK(c.acceptance() > 0.1);
    CHECK(c.acceptance() < 0.6);
}

TEST_CASE("interval mass") {
    const DensityEval d = make_density(EnsembleParams{0.0, 2.0, -kInf});
    CHECK_NEAR(interval_mass(d, -5.0, 5.0), 1.0, 1e-12);
    CHECK_NEAR(interval_mass(d, 0.0, 5.0), 0.5, 1e-12);
    CHECK_NEAR(interval_mass(d, 5.0, 0.0), 0.5, 1e-12);
    CHECK(interval_mass(d, 2.0, 3.0) == 0.0);
}

TEST_CASE("histogram is normalised and L1 drops with longer runs") {
    const EnsembleParams p{0.0, 2.0, -kInf};
    const SpectralHistogram short_run = run_and_histogram(p, 12, 2000, 200, 4, 20);
    const SpectralHistogram long_run = run_and_histogram(p, 12, 20000, 2000, 4, 20);
    const std::vector<double> f = long_run.density();
    double integral = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) integral += f[i] * (long_run.edges[i + 1] - long_run.edges[i]);
    CHECK_NEAR(integral, 1.0, 1e-12);
    CHECK(long_run.total >= long_run.in_range);
    CHECK(long_run.snapshots == 1800);
    CHECK(long_run.l1 < short_run.l1);
}

TEST_CASE("wall histograms start at the wall") {
    const EnsembleParams p{0.0, 2.0, 0.0};
    const SpectralHistogram h = run_and_histogram(p, 12, 3000, 300, 2, 20);
    CHECK(h.edges.front() == 0.0);
    CHECK(h.excluded_bins == 1);
    CHECK_NEAR(h.edges[1] - h.edges[0], 0.5 * (h.edges[2] - h.edges[1]), 1e-14);
    CHECK(h.min_mean >= 0.0);
}

TEST_CASE("argument validation") {
    const EnsembleParams p{0.0, 2.0, -kInf};
    CHECK_THROWS_AS((run_and_histogram(p, 1, 100, 10, 1, 10)), ValidationError);
    CHECK_THROWS_AS((run_and_histogram(p, 4, 100, 100, 1, 10)), ValidationError);
    CHECK_THROWS_AS((run_and_histogram(p, 4, 100, 10, 1, 1)), ValidationError);
    CHECK_THROWS_AS((make_chain(p, 0, 1)), ValidationError);
    CHECK_THROWS_AS((make_chain({1.0, 2.0, -1.0}, 4, 1)), ValidationError);
}

TEST_CASE("min eigenvalue replicas: serial and parallel agree") {
    const EnsembleParams p{0.5, 2.0, 0.0};
    const auto s = min_eigenvalue_replicas(p, 8, 4, 500, 17, Exec::Serial);
    const auto q = min_eigenvalue_replicas(p, 8, 4, 500, 17, Exec::Parallel);
    CHECK(s == q);
    CHECK(s.size() == 4);
    CHECK(s[0] == min_eigenvalue_series(p, 8, 500, 17));
    CHECK(s[1] == min_eigenvalue_series(p, 8, 500, 18));
    CHECK(min_eigenvalue_samples(p, 8, 4, 500, 17) == q);
}

}

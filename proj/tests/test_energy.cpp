#include <cmath>

#include "hardwall/energy.hpp"
#include "hardwall/errors.hpp"
#include "test_support.hpp"

using namespace hardwall;
using namespace hwtest;

namespace {

const double kLn2 = std::log(2.0);
const double kLn3 = std::log(3.0);

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("alpha = 0 energies") {
    CHECK_NEAR(energy({0.0, 2.0, 0.0}).energy, 0.75 + 0.5 * kLn2 + 0.5 * kLn3, 1e-10);
    CHECK_NEAR(energy({0.0, 2.0, -kInf}).energy, 0.75 + 0.5 * kLn2, 1e-12);
    CHECK_NEAR(energy({0.0, 2.0, -kSqrt2}).energy, 0.75 + 0.5 * kLn2, 1e-10);
    CHECK_NEAR(energy({0.0, 2.0, -5.0}).energy, 0.75 + 0.5 * kLn2, 1e-12);
    CHECK_NEAR(energy({0.0, 2.0, -kInf}).energy, 1.09657, 1e-5);
}

TEST_CASE("alpha = 0 pipeline matches the printed closed form") {
    for (double s : {-1.0, -0.5, 0.0, 0.7, 1.5, 3.0}) {
        const EnergyReport r = energy({0.0, 2.0, s});
        REQUIRE(r.closed_form_energy.has_value());
        CHECK_NEAR(r.energy, energy_alpha0_closed(s), 1e-7);
    }
}

TEST_CASE("energies from independent quadrature") {
    // Independent 40-digit evaluations of robin + m2/2 - alpha lm.
    CHECK_NEAR(energy({0.1, 2.0, 0.0}).energy, 1.869383952223231, 1e-10);
    CHECK_NEAR(energy({0.5, 2.0, 0.0}).energy, 2.323959216501082, 1e-10);
    CHECK_NEAR(energy({2.0, 2.0, 1.0}).energy, 2.139705549833817, 1e-10);
}

TEST_CASE("report fields are consistent") {
    const EnergyReport r = energy({0.5, 2.0, 0.1});
    CHECK(r.regime == RegimeTag::CriticalPinned);
    CHECK_NEAR(r.energy, r.robin + r.m2 / 2.0 - 0.5 * r.log_moment, 1e-14);
    const EnergyReport z = energy({0.0, 2.0, 0.0});
    CHECK(z.log_moment == 0.0);
}

TEST_CASE("energy is nondecreasing in the wall position") {
    for (double al : {0.0, 0.5, 2.0}) {
        double prev = -kInf;
        for (double s = 0.0; s <= 3.0; s += 0.25) {
            const double e = energy({al, 2.0, s}).energy;
            CHECK(e >= prev - 1e-12);
            prev = e;
        }
    }
}

TEST_CASE("full-line energy") {
    CHECK_NEAR(energy_fullline(0.1), 1.23416, 1e-5);
    CHECK_NEAR(energy_fullline(0.1), 1.234158168765802, 1e-13);
    CHECK_NEAR(energy_fullline(0.0), 0.75 + 0.5 * kLn2, 1e-15);
    const double h = 1e-6;
    CHECK_NEAR((energy_fullline(h) - energy_fullline(0.0)) / h, 1.0 + kLn2, 1e-4);
    CHECK_THROWS_AS(energy_fullline(-1.0), DomainError);
}

TEST_CASE("theta") {
    CHECK_NEAR(theta(0.0), kLn3 / 4.0, 1e-10);
    CHECK_NEAR(theta(0.1), 0.317612891728714, 1e-10);
    for (double al : {0.0, 0.1, 0.5, 2.0}) CHECK(theta(al) > 0.0);
}

TEST_CASE("right rate") {
    const EnsembleParams p{0.0, 2.0, -kInf};
    CHECK(right_rate(-2.0, p) == 0.0);
    CHECK(right_rate(-kSqrt2, p) == 0.0);
    CHECK_NEAR(right_rate(0.0, p), kLn3 / 2.0, 1e-10);
    double prev = 0.0;
    for (double s = -1.4; s <= 3.0; s += 0.2) {
        const double r = right_rate(s, p);
        CHECK(r >= prev - 1e-12);
        prev = r;
    }
    const double d = 1e-3;
    CHECK_NEAR(right_rate(-kSqrt2 + d, p) / (d * d * d), kSqrt2 / 6.0, 0.02 * kSqrt2 / 6.0);

    const EnsembleParams q{2.0, 2.0, 0.0};
    CHECK(right_rate(0.3, q) == 0.0);
    CHECK(right_rate(1.0, q) > 0.0);
    CHECK_NEAR(right_rate(1.0, q), energy({2.0, 2.0, 1.0}).energy - energy({2.0, 2.0, 0.0}).energy, 1e-14);
}

TEST_CASE("left rate: frozen values and closed forms") {
    const EnsembleParams p0{0.0, 2.0, -kInf};
    CHECK_NEAR(left_rate(-2.0, p0), 1.0656799507071038, 1e-12);
    CHECK_NEAR(left_rate(-2.0, p0), left_rate_alpha0_closed(-2.0), 1e-10);
    CHECK(left_rate(-kSqrt2, p0) == 0.0);
    // Independent 40-digit quadrature at x = a_c / 2 (0.3 a_c for alpha = 0.5).
    CHECK_NEAR(left_rate(a_crit(0.1) / 2.0, {0.1, 2.0, 0.0}), 0.070031632450310743, 1e-12);
    CHECK_NEAR(left_rate(a_crit(2.0) / 2.0, {2.0, 2.0, 0.0}), 1.6091279254352588, 1e-11);
    CHECK_NEAR(left_rate(0.3 * a_crit(0.5), {0.5, 2.0, 0.0}), 0.77842456794989723, 1e-11);
    CHECK_THROWS_AS((left_rate(1.0, {2.0, 2.0, 0.0})), DomainError);
    CHECK_THROWS_AS((left_rate(-1.0, p0)), DomainError);
}

TEST_CASE("left rate grows like x^2 far out") {
    const EnsembleParams p0{0.0, 2.0, -kInf};
    const double x = -50.0;
    CHECK_NEAR(left_rate(x, p0) / (x * x), 1.0, 0.05);
}

TEST_CASE("left rate has a 3/2 power onset") {
    for (double al : {0.0, 0.1, 2.0}) {
        const EdgePair e = critical_edges(al);
        const EnsembleParams p{al, 2.0, al > 0.0 ? 0.0 : -kInf};
        const double d1 = 1e-4 * std::max(e.a, 1.0), d2 = 2.0 * d1;
        const double slope = std::log(left_rate(e.a - d2, p) / left_rate(e.a - d1, p)) / std::log(2.0);
        INFO("alpha=" << al);
        CHECK_NEAR(slope, 1.5, 0.015);
        CHECK_NEAR(left_rate(e.a - d1, p) / std::pow(d1, 1.5), tail_coefficient(al), 0.01 * tail_coefficient(al));
    }
}

TEST_CASE("tail coefficient") {
    CHECK(tail_coefficient(0.0) == std::pow(2.0, 2.75) / 3.0);
    CHECK_NEAR(tail_coefficient(0.0), 2.242390440676572, 1e-15);
    CHECK_NEAR(tail_coefficient_printed(0.0), tail_coefficient(0.0), 1e-14);
    CHECK(std::abs(tail_coefficient_printed(2.0) - tail_coefficient(2.0)) > 1.0);
}

TEST_CASE("printed pulled-side closed form at alpha = 0") {
    for (double x : {-1.5, -2.0, -4.0}) CHECK_NEAR(delta_e_closed(x, 0.0), left_rate_alpha0_closed(x), 1e-10);
}

TEST_CASE("log probability estimate") {
    CHECK(log_prob_estimate(10, {0.0, 2.0, -2.0}) == 0.0);
    CHECK_NEAR(log_prob_estimate(10, {0.0, 2.0, 0.0}), -100.0 * kLn3 / 2.0, 1e-8);
    CHECK_NEAR(log_prob_estimate(10, {0.5, 1.0, 0.0}, Reference::FullLine), -50.0 * 2.0 * theta(0.5), 1e-8);
    CHECK(log_prob_estimate(10, {0.5, 2.0, 0.0}, Reference::HalfLine) == 0.0);
    CHECK_THROWS_AS((log_prob_estimate(0, {0.0, 2.0, 0.0})), ValidationError);
}

TEST_CASE("small alpha slopes") {
    const SlopeAudit s = small_alpha_slope_audit();
    CHECK_NEAR(s.theta_slope_numeric, 0.549299238539, 1e-6);
    CHECK_NEAR(s.theta_slope_envelope, kLn3 / 2.0, 1e-9);
    CHECK_NEAR(s.theta_slope_numeric, s.theta_slope_envelope, 1e-4);
    CHECK_NEAR(s.fullline_slope, 1.0 + kLn2, 1e-15);
    CHECK_NEAR(s.printed_first_expression, 0.544285696793, 1e-10);
    CHECK_NEAR(s.printed_second_expression, 0.604575786974, 1e-10);
    CHECK_NEAR(s.implied_theta_slope, -0.5442856968, 1e-9);
    CHECK_NEAR(s.example_secant_slope, 0.4274692783, 1e-9);
}

}

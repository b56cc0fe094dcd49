#include <cmath>
#include <numbers>
#include <string>

#include "hardwall/density.hpp"
#include "hardwall/errors.hpp"
#include "hardwall/kernels.hpp"
#include "hardwall/orthopoly.hpp"
#include "test_support.hpp"

using namespace hardwall;
using namespace hwtest;

TEST_SUITE("orthopoly") {

TEST_CASE("half-line moments") {
    CHECK_NEAR(static_cast<double>(half_line_moment(0, 0.0)), std::sqrt(std::numbers::pi) / 2.0, 2e-16);
    CHECK_NEAR(static_cast<double>(half_line_moment(1, 0.0)), 0.5, 1e-16);
    CHECK_NEAR(static_cast<double>(half_line_moment(2, 2.5)), 3.0, 1e-15);
    // Recurrence m(k + 2) = (k + 2 mu + 1)/2 m(k), checked in the extended type.
    const Ext256 lhs = half_line_moment(7, 1.25);
    const Ext256 rhs = half_line_moment(5, 1.25) * Ext256(5 + 2.5 + 1) / 2;
    CHECK(static_cast<double>(abs(lhs - rhs) / rhs) < 1e-70);
}

TEST_CASE("one- and two-term bases") {
    const OrthoBasis b1 = build_basis(1, 0.0);
    CHECK(b1.size() == 1);
    CHECK_NEAR(b1.norm(0), std::sqrt(std::numbers::pi) / 2.0, 2e-16);
    const double y = 0.7;
    CHECK_NEAR(b1.kernel_diagonal(y), std::exp(-y * y) / b1.norm(0), 1e-15);

    const OrthoBasis b2 = build_basis(2, 0.0);
    CHECK(b2.monic_coefficient_double(1, 1) == 1.0);
    CHECK_NEAR(b2.monic_coefficient_double(1, 0), -1.0 / std::sqrt(std::numbers::pi), 1e-16);
    CHECK(b2.monic_coefficient(1, 0, 30).substr(0, 22) == "-5.6418958354775628694");
    // d1 = m2 - m1^2 / m0.
    CHECK_NEAR(b2.norm(1), std::sqrt(std::numbers::pi) / 4.0 - 0.5 / std::sqrt(std::numbers::pi), 1e-16);
}

TEST_CASE("residuals are below tolerance") {
    for (int n : {5, 15, 30}) {
        const OrthoBasis b = build_basis(n, 0.5 * n);
        CHECK(b.residuals().max_offdiag < kOffdiagTol);
        CHECK(b.residuals().max_gram_dev < kGramTol);
    }
}

TEST_CASE("precision ladder") {
    CHECK(build_basis(15, 0.0).bits() == 256);
    CHECK(build_basis(30, 0.0).bits() == 256);
    CHECK(build_basis(64, 0.0).bits() == 512);
    CHECK_THROWS_AS((build_basis_at(64, 0.0, 256)), PrecisionExhausted);
    CHECK(build_basis(5, 0.0, 1024).bits() == 1024);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS((build_basis(0, 0.0)), ValidationError);
    CHECK_THROWS_AS((build_basis(kMaxBasisSize + 1, 0.0)), ValidationError);
    CHECK_THROWS_AS((build_basis(4, -0.2)), ValidationError);
    CHECK_THROWS_AS((build_basis_at(4, 0.0, 300)), ValidationError);
}

TEST_CASE("finite-n density is a positive probability density") {
    for (auto [n, mu] : {std::pair{7, 0.0}, std::pair{5, 2.5}, std::pair{15, 7.5}, std::pair{30, 3.0}}) {
        const OrthoBasis b = build_basis(n, mu);
        INFO("n=" << n << " mu=" << mu);
        CHECK_NEAR(finite_n_mass(b), 1.0, 1e-10);
        const auto xs = linspace(1e-3, finite_n_cutoff(b), 400);
        for (double f : finite_n_grid(b, xs, Exec::Serial)) CHECK(f > 0.0);
    }
}

TEST_CASE("finite-n second moment matches the limit at fixed mu / n") {
    // Exact for every n: the mean of sum x_i^2 / n^2 is (n + 2 mu)/(2 n) for this weight.
    CHECK_NEAR(finite_n_second_moment(build_basis(7, 0.0)), 0.5, 1e-9);
    CHECK_NEAR(finite_n_second_moment(build_basis(5, 2.5)), 1.0, 1e-9);
    CHECK_NEAR(finite_n_second_moment(build_basis(10, 5.0)), 1.0, 1e-9);
}

TEST_CASE("trimmed L1 distances") {
    CHECK_NEAR(trimmed_l1(build_basis(5, 0.0)), 0.05436, 1e-4);
    CHECK_NEAR(trimmed_l1(build_basis(5, 2.5)), 0.05464, 1e-4);
    CHECK_NEAR(trimmed_l1(build_basis(15, 0.0)), 0.01898, 1e-4);
}

TEST_CASE("convergence study") {
    const ConvergenceStudy s = convergence_study(0.0, {7, 9, 15});
    REQUIRE(s.rows.size() == 3);
    CHECK(s.rows[0].l1 > s.rows[1].l1);
    CHECK(s.rows[1].l1 > s.rows[2].l1);
    CHECK(s.monotone_within_slack());
    for (const auto& r : s.rows) CHECK_NEAR(r.mass, 1.0, 1e-8);
    CHECK_NEAR(s.limit_second_moment, 0.5, 1e-12);

    const ConvergenceStudy h = convergence_study(0.5, {5, 9});
    CHECK(h.rows[0].mu == 2.5);
    CHECK(h.rows[1].mu == 4.5);
    CHECK(h.rows[1].l1 < h.rows[0].l1);
}

TEST_CASE("monotone_within_slack") {
    ConvergenceStudy s;
    s.rows = {{5, 0, 256, 0.10}, {7, 0, 256, 0.105}, {9, 0, 256, 0.05}};
    CHECK(s.monotone_within_slack());
    s.rows[1].l1 = 0.12;
    CHECK_FALSE(s.monotone_within_slack());
}

}

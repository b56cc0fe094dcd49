#pragma once

#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace hardwall {

// 256-bit working type for moments and reference values.
using Ext256 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<77>,
                                             boost::multiprecision::et_off>;

inline constexpr int kMaxBasisSize = 64;
inline constexpr unsigned kPrecisionLadder[] = {256, 512, 1024, 2048};

// Integral over (0, inf) of x^(k + 2 mu) exp(-x^2), i.e. Gamma((k + 2 mu + 1)/2) / 2.
Ext256 half_line_moment(int k, double mu);

struct BasisResiduals {
    double max_offdiag = 0.0;    // max |<H_j, H_k>| / sqrt(d_j d_k), j != k
    double max_gram_dev = 0.0;   // max |G - I| of the orthonormal Gram matrix
};

inline constexpr double kOffdiagTol = 1e-30;
inline constexpr double kGramTol = 1e-25;

// Monic polynomials H_0..H_{n-1} orthogonal for x^(2 mu) exp(-x^2) on (0, inf), built from a
// Cholesky factorisation of the Hankel moment matrix. The Gram matrix is re-evaluated with
// moments at twice the working precision; the basis is rejected when it misses the tolerances.
class OrthoBasis {
public:
    struct Impl;

    double mu() const;
    int size() const;
    unsigned bits() const;
    const BasisResiduals& residuals() const;

    // d_k = <H_k, H_k> rounded to double.
    double norm(int k) const;
    // Coefficient of x^j in H_k, as a decimal string with `digits` significant digits.
    std::string monic_coefficient(int k, int j, int digits = 40) const;
    double monic_coefficient_double(int k, int j) const;

    // sum_k phi_k(y)^2 with phi_k(y) = H_k(y) y^mu exp(-y^2/2) / sqrt(d_k), evaluated in the
    // working precision and rounded.
    double kernel_diagonal(double y) const;

    explicit OrthoBasis(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<const Impl> impl_;
};

// Single rung; PrecisionExhausted when the residual tolerances are missed.
OrthoBasis build_basis_at(int n, double mu, unsigned bits);

// Walks the precision ladder from `start_bits`, doubling on PrecisionExhausted up to 2048 bits.
OrthoBasis build_basis(int n, double mu, unsigned start_bits = 256);

// f_n(x) = (1/sqrt n) sum_{k<n} phi_k(sqrt(n) x)^2 with n = basis.size().
double finite_n_density(double x, const OrthoBasis& basis);

// Right end of the integration range used for f_n moments.
double finite_n_cutoff(const OrthoBasis& basis);

// Integrals of f_n and x^2 f_n over (0, inf) by adaptive quadrature.
double finite_n_mass(const OrthoBasis& basis);
double finite_n_second_moment(const OrthoBasis& basis);

struct ConvergenceRow {
    int n = 0;
    double mu = 0.0;
    unsigned bits = 0;
    double l1 = 0.0;          // integral of |f_n - f_alpha| over the trimmed support
    double mass = 0.0;        // integral of f_n
    double second_moment = 0.0;
};

struct ConvergenceStudy {
    double alpha = 0.0;
    double trim_lo = 0.0, trim_hi = 0.0;   // [a + 0.05 w, b - 0.05 w]
    double limit_second_moment = 0.0;
    std::vector<ConvergenceRow> rows;
    // Each distance is at most 1.1 times the previous one.
    bool monotone_within_slack() const;
};

// mu = alpha n without rounding so that fractional exponents such as 5/2 at n = 5 are reachable.
// The limit is the wall-at-zero density f_alpha.
ConvergenceStudy convergence_study(double alpha, const std::vector<int>& n_list);

// L1 distance on the trimmed support between f_n and the limit density for mu / n.
double trimmed_l1(const OrthoBasis& basis);

}  // namespace hardwall

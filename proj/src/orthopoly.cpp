#include "hardwall/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "hardwall/density.hpp"
#include "hardwall/errors.hpp"

namespace hardwall {

namespace mp = boost::multiprecision;

namespace {

template <unsigned D>
using Real = mp::number<mp::mpfr_float_backend<D>, mp::et_off>;

// Decimal digits for 256, 512, 1024, 2048 and the 4096-bit verification type.
constexpr unsigned kD256 = 77, kD512 = 155, kD1024 = 309, kD2048 = 617, kD4096 = 1234;

template <unsigned D>
struct Verify;
template <> struct Verify<kD256> { static constexpr unsigned value = kD512; };
template <> struct Verify<kD512> { static constexpr unsigned value = kD1024; };
template <> struct Verify<kD1024> { static constexpr unsigned value = kD2048; };
template <> struct Verify<kD2048> { static constexpr unsigned value = kD4096; };

template <unsigned D>
Real<D> moment(int k, const Real<D>& mu) {
    return mp::tgamma((Real<D>(k) + 2 * mu + 1) / 2) / 2;
}

template <unsigned D>
struct BasisData {
    // Orthonormal coefficients: p_k(x) = sum_{j<=k} c[k][j] x^j.
    std::vector<std::vector<Real<D>>> c;
    Real<D> mu;
    unsigned bits = 0;
};

}  // namespace

struct OrthoBasis::Impl {
    using Data = std::variant<BasisData<kD256>, BasisData<kD512>, BasisData<kD1024>, BasisData<kD2048>>;
    Data data;
    double mu = 0.0;
    int n = 0;
    unsigned bits = 0;
    BasisResiduals residuals;
};

namespace {

template <unsigned D>
std::shared_ptr<const OrthoBasis::Impl> build_rung(int n, double mu, unsigned bits) {
    using R = Real<D>;
    using V = Real<Verify<D>::value>;
    const R rmu(mu);
    std::vector<R> m(2 * n - 1);
    for (int k = 0; k < 2 * n - 1; ++k) m[k] = moment<D>(k, rmu);

    // Hankel matrix M_ij = m_{i+j} = L L^T.
    std::vector<std::vector<R>> L(n, std::vector<R>(n, R(0)));
    for (int j = 0; j < n; ++j) {
        R s = m[2 * j];
        for (int k = 0; k < j; ++k) s -= L[j][k] * L[j][k];
        if (!(s > 0)) {
            std::ostringstream os;
            os << "build_basis: Hankel pivot " << j << " not positive at " << bits << " bits";
            throw PrecisionExhausted(os.str());
        }
        L[j][j] = mp::sqrt(s);
        for (int i = j + 1; i < n; ++i) {
            R t = m[i + j];
            for (int k = 0; k < j; ++k) t -= L[i][k] * L[j][k];
            L[i][j] = t / L[j][j];
        }
    }
    // C = L^{-1}, lower triangular.
    BasisData<D> out;
    out.mu = rmu;
    out.bits = bits;
    out.c.assign(n, std::vector<R>());
    for (int k = 0; k < n; ++k) {
        out.c[k].assign(k + 1, R(0));
        out.c[k][k] = 1 / L[k][k];
        for (int j = k - 1; j >= 0; --j) {
            R s = 0;
            for (int i = j + 1; i <= k; ++i) s += out.c[k][i] * L[i][j];
            out.c[k][j] = -s / L[j][j];
        }
    }

    // Gram matrix against moments at twice the precision.
    const V vmu(mu);
    std::vector<V> mv(2 * n - 1);
    for (int k = 0; k < 2 * n - 1; ++k) mv[k] = moment<Verify<D>::value>(k, vmu);
    std::vector<std::vector<V>> cv(n);
    for (int k = 0; k < n; ++k) {
        cv[k].resize(k + 1);
        for (int j = 0; j <= k; ++j) cv[k][j] = V(out.c[k][j]);
    }
    // w_k[i] = sum_j c[k][j] m[i + j]
    std::vector<std::vector<V>> w(n, std::vector<V>(n, V(0)));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            V s = 0;
            for (int j = 0; j <= k; ++j) s += cv[k][j] * mv[i + j];
            w[k][i] = s;
        }
    BasisResiduals res;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l <= k; ++l) {
            V g = 0;
            for (int i = 0; i <= l; ++i) g += cv[l][i] * w[k][i];
            const double dev = static_cast<double>(mp::abs(k == l ? V(g - 1) : g));
            if (k != l) res.max_offdiag = std::max(res.max_offdiag, dev);
            res.max_gram_dev = std::max(res.max_gram_dev, dev);
        }
    if (!(res.max_offdiag < kOffdiagTol && res.max_gram_dev < kGramTol)) {
        std::ostringstream os;
        os << "build_basis: residuals offdiag " << res.max_offdiag << ", gram " << res.max_gram_dev << " at "
           << bits << " bits (n=" << n << ", mu=" << mu << ")";
        throw PrecisionExhausted(os.str());
    }

    auto impl = std::make_shared<OrthoBasis::Impl>();
    impl->data = std::move(out);
    impl->mu = mu;
    impl->n = n;
    impl->bits = bits;
    impl->residuals = res;
    return impl;
}

template <unsigned D>
double kernel_diag(const BasisData<D>& b, double yd) {
    using R = Real<D>;
    const R y(yd);
    const int n = static_cast<int>(b.c.size());
    std::vector<R> pw(n);
    pw[0] = 1;
    for (int j = 1; j < n; ++j) pw[j] = pw[j - 1] * y;
    R sum = 0;
    for (int k = 0; k < n; ++k) {
        R p = 0;
        for (int j = 0; j <= k; ++j) p += b.c[k][j] * pw[j];
        sum += p * p;
    }
    R weight = mp::exp(-y * y);
    if (b.mu != 0) weight *= mp::pow(y, 2 * b.mu);
    return static_cast<double>(sum * weight);
}

void check_n_mu(int n, double mu) {
    if (n < 1 || n > kMaxBasisSize) throw ValidationError("build_basis: n must lie in [1, 64]");
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw ValidationError("build_basis: mu must be finite and >= 0");
}

DensityEval limit_density(const OrthoBasis& b) {
    return make_density(EnsembleParams{b.mu() / b.size(), 2.0, 0.0});
}

}  // namespace

Ext256 half_line_moment(int k, double mu) {
    if (k < 0) throw ValidationError("half_line_moment: k must be >= 0");
    if (!(mu >= 0.0)) throw ValidationError("half_line_moment: mu must be >= 0");
    return moment<kD256>(k, Ext256(mu));
}

double OrthoBasis::mu() const { return impl_->mu; }
int OrthoBasis::size() const { return impl_->n; }
unsigned OrthoBasis::bits() const { return impl_->bits; }
const BasisResiduals& OrthoBasis::residuals() const { return impl_->residuals; }

double OrthoBasis::norm(int k) const {
    if (k < 0 || k >= impl_->n) throw ValidationError("OrthoBasis::norm: index out of range");
    return std::visit([k](const auto& b) { return static_cast<double>(1 / (b.c[k][k] * b.c[k][k])); }, impl_->data);
}

std::string OrthoBasis::monic_coefficient(int k, int j, int digits) const {
    if (k < 0 || k >= impl_->n || j < 0 || j > k) throw ValidationError("OrthoBasis::monic_coefficient: index out of range");
    return std::visit([=](const auto& b) { return (b.c[k][j] / b.c[k][k]).str(digits, std::ios_base::scientific); },
                      impl_->data);
}

double OrthoBasis::monic_coefficient_double(int k, int j) const {
    if (k < 0 || k >= impl_->n || j < 0 || j > k) throw ValidationError("OrthoBasis::monic_coefficient: index out of range");
    return std::visit([=](const auto& b) { return static_cast<double>(b.c[k][j] / b.c[k][k]); }, impl_->data);
}

double OrthoBasis::kernel_diagonal(double y) const {
    return std::visit([y](const auto& b) { return kernel_diag(b, y); }, impl_->data);
}

OrthoBasis build_basis_at(int n, double mu, unsigned bits) {
    check_n_mu(n, mu);
    switch (bits) {
        case 256: return OrthoBasis(build_rung<kD256>(n, mu, bits));
        case 512: return OrthoBasis(build_rung<kD512>(n, mu, bits));
        case 1024: return OrthoBasis(build_rung<kD1024>(n, mu, bits));
        case 2048: return OrthoBasis(build_rung<kD2048>(n, mu, bits));
        default: throw ValidationError("build_basis_at: bits must be 256, 512, 1024 or 2048");
    }
}

OrthoBasis build_basis(int n, double mu, unsigned start_bits) {
    check_n_mu(n, mu);
    std::string last;
    for (unsigned bits : kPrecisionLadder) {
        if (bits < start_bits) continue;
        try {
            return build_basis_at(n, mu, bits);
        } catch (const PrecisionExhausted& e) {
            last = e.what();
        }
    }
    throw PrecisionExhausted(last.empty() ? "build_basis: start_bits above the 2048-bit cap" : last);
}

double finite_n_density(double x, const OrthoBasis& basis) {
    if (basis.mu() > 0.0 ? !(x > 0.0) : !(x >= 0.0))
        throw DomainError("finite_n_density: x outside the half line");
    const double rn = std::sqrt(static_cast<double>(basis.size()));
    return basis.kernel_diagonal(rn * x) / rn;
}

double finite_n_cutoff(const OrthoBasis& basis) {
    return limit_density(basis).hi() + 2.0 + 6.0 / std::sqrt(static_cast<double>(basis.size()));
}

namespace {

double integrate_fn(const OrthoBasis& basis, const RealFn& h) {
    const double split = limit_density(basis).hi();
    const double top = finite_n_cutoff(basis);
    const RealFn f = [&](double x) { return x > 0.0 ? h(x) * finite_n_density(x, basis) : 0.0; };
    return integrate_gk(f, 0.0, split, 1e-12) + integrate_gk(f, split, top, 1e-12);
}

}  // namespace

double finite_n_mass(const OrthoBasis& basis) {
    return integrate_fn(basis, [](double) { return 1.0; });
}

double finite_n_second_moment(const OrthoBasis& basis) {
    return integrate_fn(basis, [](double x) { return x * x; });
}

double trimmed_l1(const OrthoBasis& basis) {
    const DensityEval d = limit_density(basis);
    const double w = d.hi() - d.lo();
    const double lo = d.lo() + 0.05 * w, hi = d.hi() - 0.05 * w;
    // The integrand has kinks where the curves cross; 1e-7 keeps GK convergent there.
    return integrate_gk([&](double x) { return std::abs(finite_n_density(x, basis) - eval_density(x, d)); }, lo, hi,
                        1e-7);
}

bool ConvergenceStudy::monotone_within_slack() const {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].l1 > 1.1 * rows[i - 1].l1) return false;
    return true;
}

ConvergenceStudy convergence_study(double alpha, const std::vector<int>& n_list) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("convergence_study: alpha must be >= 0");
    if (n_list.empty() || !std::is_sorted(n_list.begin(), n_list.end()))
        throw ValidationError("convergence_study: n_list must be non-empty and ascending");
    ConvergenceStudy s;
    s.alpha = alpha;
    const DensityEval d = make_density(EnsembleParams{alpha, 2.0, 0.0});
    const double w = d.hi() - d.lo();
    s.trim_lo = d.lo() + 0.05 * w;
    s.trim_hi = d.hi() - 0.05 * w;
    s.limit_second_moment = second_moment(d);
    for (int n : n_list) {
        const OrthoBasis b = build_basis(n, alpha * n);
        ConvergenceRow r;
        r.n = n;
        r.mu = b.mu();
        r.bits = b.bits();
        r.l1 = trimmed_l1(b);
        r.mass = finite_n_mass(b);
        r.second_moment = finite_n_second_moment(b);
        s.rows.push_back(r);
    }
    return s;
}

}  // namespace hardwall

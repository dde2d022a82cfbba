#include "apport/rank_one.hpp"

#include <cmath>

#include "apport/linalg.hpp"

namespace apport {

namespace {

cd sign_of(cd z) {
    const double m = std::abs(z);
    return (m == 0.0) ? cd(1.0, 0.0) : z / m;
}

void require_rank_one(const CMatrix& a) {
    // relative spectral gap, probed by pivoted QR (accurate for tiny sigma_1)
    const std::vector<double> s = qr_column_pivot_rdiag(a);
    if (s.empty() || s[0] == 0.0) throw std::domain_error("rank-one: zero matrix");
    if (s.size() >= 2 && s[1] >= 1e-10 * s[0])
        throw std::domain_error("rank-one: numerical rank exceeds one");
}

}  // namespace

std::pair<CVector, CVector> factor_rank_one(const CMatrix& a) {
    require_rank_one(a);
    const std::size_t n = a.n();
    // normalize the largest column; y follows from y^* = x^* A
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(a(i, j));
        if (s > best_norm) {
            best_norm = s;
            best = j;
        }
    }
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a(i, best);
    const double xnorm = norm2(x);
    x = scale(1.0 / xnorm, std::move(x));
    // with ||x|| = 1 and A = x y^*, y = A^* x
    CVector y(n, cd(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) y[j] += std::conj(a(i, j)) * x[i];
    return {x, y};
}

RankOneCanonical canonical_rank_one(const CMatrix& a) {
    const std::size_t n = a.n();
    auto [x, y] = factor_rank_one(a);

    cd lambda(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) lambda += a(i, i);

    CVector e0(n, cd(0.0, 0.0));
    e0[0] = 1.0;
    const CMatrix h1 = householder(x, e0);
    const CVector z = h1 * y;

    CVector zhat = z;
    zhat[0] = 0.0;
    const double bnorm = norm2(zhat);

    CMatrix h2 = identity(n);
    // both degenerate guards collapse to the identity reflector; "parallel"
    // is declared at relative 1e-12
    if (bnorm > 1e-12 * norm2(z)) {
        CVector target(n, cd(0.0, 0.0));
        target[1] = sign_of(z[0]) * bnorm;
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(zhat[i] - target[i]));
        if (dev > 1e-12 * bnorm) h2 = householder(zhat, target);
    }

    RankOneCanonical out;
    out.gamma = sign_of(lambda);
    out.alpha = std::abs(lambda);
    out.beta = (bnorm > 1e-12 * norm2(z)) ? bnorm : 0.0;
    out.U = h2 * h1;
    return out;
}

std::pair<double, double> odd_branch_parameters(std::size_t n, double beta) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd_branch_parameters: n must be odd >= 3");
    if (beta <= 0.0) throw std::invalid_argument("odd_branch_parameters: beta must be positive");
    const double nn = static_cast<double>(n);
    const double a = (1.0 - std::sqrt(beta * beta + 1.0)) / ((nn - 1.0) * std::sqrt(nn) * beta);
    const double b = std::sqrt(1.0 / (nn - 1.0) - nn * a * a);
    return {a, b};
}

ApportionReport apportion_rank_one(const CMatrix& a) {
    const std::size_t n = a.n();
    ApportionReport rep;
    rep.kappa = frobenius(a) / static_cast<double>(n);

    if (max_abs(a) == 0.0) {
        rep.status = ApportionStatus::uniform;
        rep.transform = identity(n);
        rep.result = a;
        rep.kappa = 0.0;
        rep.residual = 0.0;
        return rep;
    }

    const RankOneCanonical canon = canonical_rank_one(a);
    CMatrix v(n);
    if (canon.alpha == 0.0 || canon.beta == 0.0) {
        // lambda = 0 or ||A||_F = |tr A|: the DFT finishes the job
        v = dft(n) * canon.U;
    } else {
        const double beta = canon.beta / canon.alpha;  // scale so alpha = 1
        const double root_n = std::sqrt(static_cast<double>(n));
        CVector u0(n, cd(1.0 / root_n, 0.0));
        CVector u1(n);
        if (n % 2 == 0) {
            for (std::size_t i = 0; i < n; ++i)
                u1[i] = cd(0.0, (i % 2 == 0) ? 1.0 / root_n : -1.0 / root_n);
        } else {
            const auto [pa, pb] = odd_branch_parameters(n, beta);
            u1[0] = (1.0 - static_cast<double>(n)) * pa;
            for (std::size_t i = 1; i < n; ++i)
                u1[i] = cd(pa, (i % 2 == 1) ? pb : -pb);
        }
        const CMatrix u = extend_to_unitary({u0, u1}, n);
        v = u * canon.U;
    }

    rep.transform = v;
    rep.result = conjugate_by(v, a);
    rep.status = is_uniform(rep.result, 1e-9).first ? ApportionStatus::uniform
                                                    : ApportionStatus::inconclusive;
    double dev = 0.0;
    for (const cd& z : rep.result.entries()) dev = std::max(dev, std::abs(std::abs(z) - rep.kappa));
    rep.residual = dev;
    return rep;
}

}  // namespace apport

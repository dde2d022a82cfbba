#include "apport/certify.hpp"

#include <algorithm>
#include <cmath>

#include "apport/linalg.hpp"

namespace apport {

std::string to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::translation_violation: return "translation-violation";
        case CertificateKind::psd_rank: return "psd-rank";
        case CertificateKind::none_found: return "none-found";
    }
    return "?";
}

double translation_rhs(const CMatrix& a, cd c) {
    const std::size_t n = a.n();
    if (n < 2) throw std::domain_error("translation_rhs: n must be >= 2");
    double s = 0.0;      // sum |a_kk - c|
    double diag2 = 0.0;  // sum |a_kk - c|^2
    for (std::size_t k = 0; k < n; ++k) {
        const double m = std::abs(a(k, k) - c);
        s += m;
        diag2 += m * m;
    }
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) off2 += std::norm(a(i, j));
    const double nn = static_cast<double>(n);
    const double mean = s / nn;
    const double fro2 = diag2 + off2;  // ||A - cI||_F^2
    return mean + std::sqrt(mean * mean + fro2 / (nn * (nn - 1.0)));
}

namespace {

double violation(const CMatrix& a, cd c) { return std::abs(c) - translation_rhs(a, c); }

// compass refinement of |c| - rhs(c) in the complex plane
cd refine(const CMatrix& a, cd c) {
    double step = 0.25 * (1.0 + std::abs(c));
    double best = violation(a, c);
    while (step > 1e-9) {
        bool improved = false;
        const cd dirs[4] = {cd(step, 0), cd(-step, 0), cd(0, step), cd(0, -step)};
        for (const cd& d : dirs) {
            const double v = violation(a, c + d);
            if (v > best) {
                best = v;
                c += d;
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }
    return c;
}

}  // namespace

Certificate certify_not_u_apportionable(const CMatrix& a) {
    const std::size_t n = a.n();
    if (n < 2) throw std::domain_error("certify_not_u_apportionable: n must be >= 2");

    std::vector<cd> grid;
    cd mean_diag(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        grid.push_back(a(k, k));
        mean_diag += a(k, k);
    }
    grid.push_back(mean_diag / static_cast<double>(n));
    const double rmax = 4.0 * std::max(max_abs(a), 0.25);
    for (int ang = 0; ang < 24; ++ang)
        for (int rad = 1; rad <= 20; ++rad) {
            const double r = rmax * static_cast<double>(rad) / 20.0;
            const double t = 2.0 * 3.141592653589793238462643383279502884 *
                             static_cast<double>(ang) / 24.0;
            grid.emplace_back(r * std::cos(t), r * std::sin(t));
        }

    // deterministic reduction: max violation, ties by smaller |c|, then smaller arg
    cd best_c = grid.front();
    double best_v = violation(a, best_c);
    for (const cd& c : grid) {
        const double v = violation(a, c);
        if (v > best_v ||
            (v == best_v && (std::abs(c) < std::abs(best_c) ||
                             (std::abs(c) == std::abs(best_c) && std::arg(c) < std::arg(best_c))))) {
            best_v = v;
            best_c = c;
        }
    }

    const cd c = refine(a, best_c);
    const double rhs = translation_rhs(a, c);
    Certificate cert;
    if (std::abs(c) - rhs > 1e-9 * (1.0 + std::abs(c))) {
        cert.kind = CertificateKind::translation_violation;
        cert.witness_c = c;
        cert.lhs = std::abs(c);
        cert.rhs = rhs;
    }
    return cert;
}

Certificate psd_apportionability(const CMatrix& h) {
    const double scale = std::max(1.0, max_abs(h));
    if (max_abs_diff(h, adjoint(h)) > 1e-10 * scale)
        throw std::domain_error("psd_apportionability: matrix not Hermitian");
    const HermitianEig eig = hermitian_eig(h);
    const double lmax = eig.values.empty() ? 0.0 : eig.values.front();
    const double lmin = eig.values.empty() ? 0.0 : eig.values.back();
    if (lmin < -1e-10 * std::max(1.0, lmax))
        throw std::domain_error("psd_apportionability: matrix not positive semidefinite");

    std::size_t rank = 0;
    for (double v : eig.values)
        if (v > 1e-10 * lmax) ++rank;

    Certificate cert;
    if (rank >= 2) {
        cert.kind = CertificateKind::psd_rank;
        cert.lhs = static_cast<double>(rank);
        cert.rhs = 1.0;
    }
    return cert;
}

UBounds u_bounds(const CMatrix& a) {
    const NormReport r = norms(a);
    UBounds b;
    b.lower = r.frobenius / static_cast<double>(a.n());
    b.upper = r.spectral;
    const CMatrix comm = a * adjoint(a) - adjoint(a) * a;
    if (max_abs(comm) < 1e-9) b.normal_upper = r.nuclear / static_cast<double>(a.n());
    return b;
}

CMatrix equiangular_test_matrix(const std::vector<CVector>& columns, double theta) {
    if (columns.empty()) throw std::invalid_argument("equiangular_test_matrix: empty frame");
    if (!(theta > 0.0 && theta < 1.5707963267948966))
        throw std::invalid_argument("equiangular_test_matrix: theta must be in (0, pi/2)");
    const std::size_t d = columns.front().size();
    for (const CVector& c : columns) {
        if (c.size() != d) throw std::invalid_argument("equiangular_test_matrix: ragged columns");
        if (std::abs(norm2(c) - 1.0) > 1e-10)
            throw std::invalid_argument("equiangular_test_matrix: columns must have unit norm");
    }
    const std::size_t n = columns.size();
    CMatrix g(n);  // B^* B
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = dot(columns[i], columns[j]);
    const double shift = std::cos(theta) - 1.0;
    for (std::size_t i = 0; i < n; ++i) g(i, i) += shift;
    return g;
}

}  // namespace apport

#include "apport/interlace.hpp"

#include <algorithm>
#include <cmath>

#include "apport/linalg.hpp"

namespace apport {

MaskFamily mask_family(const CMatrix& m, const LoopGraph& g) {
    const std::size_t n = g.n();
    if (n < 3) throw std::domain_error("mask_family: graph order must be >= 3");
    if (m.n() != n) throw std::domain_error("mask_family: matrix size must match graph order");
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs_diff(m, adjoint(m)) > 1e-10 * scale)
        throw std::domain_error("mask_family: matrix not Hermitian");
    if (!is_graceful(g)) throw std::domain_error("mask_family: graph not gracefully labelled");

    // pattern = J - A ∘ (J + I): off-diagonal 1 - a_ij, diagonal 1 - 2 a_ii
    const CMatrix a = g.adjacency();
    std::vector<std::vector<double>> pattern(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            pattern[i][j] = 1.0 - ((i == j) ? 2.0 : 1.0) * a(i, j).real();

    MaskFamily fam{m, g, {}, {}};
    fam.members.reserve(n);
    fam.thetas.reserve(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        // member k applies the pattern shifted by k along the diagonal
        CMatrix mk(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                mk(i, j) = m(i, j) * pattern[(i + k) % n][(j + k) % n];
        const HermitianEig eig = hermitian_eig(mk);
        fam.thetas.insert(fam.thetas.end(), eig.values.begin(), eig.values.end());
        fam.members.push_back(std::move(mk));
    }
    std::sort(fam.thetas.begin(), fam.thetas.end(), std::greater<double>());
    return fam;
}

double check_sum_identity(const MaskFamily& fam) {
    const std::size_t n = fam.base.n();
    if (n < 4) throw std::domain_error("check_sum_identity: order must be >= 4");
    CMatrix sum(n);
    for (const CMatrix& mk : fam.members) sum += mk;
    return max_abs_diff(sum, cd(static_cast<double>(n) - 2.0, 0.0) * fam.base);
}

std::vector<InterlaceRow> interlacing_bounds(const MaskFamily& fam) {
    const std::size_t n = fam.base.n();
    if (n < 4) throw std::domain_error("interlacing_bounds: order must be >= 4");
    const HermitianEig eig = hermitian_eig(fam.base);
    const double factor = static_cast<double>(n) / (static_cast<double>(n) - 2.0);
    std::vector<InterlaceRow> rows(n);
    for (std::size_t l = 0; l < n; ++l) {
        InterlaceRow& r = rows[l];
        r.lambda = eig.values[l];
        r.lower = factor * fam.thetas[l + n * n - n];
        r.upper = factor * fam.thetas[l];
        const double tol = 1e-9 * (1.0 + std::abs(r.lambda));
        r.pass = (r.lower - tol <= r.lambda) && (r.lambda <= r.upper + tol);
    }
    return rows;
}

}  // namespace apport

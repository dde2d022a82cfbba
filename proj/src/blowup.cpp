#include "apport/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apport/linalg.hpp"
#include "apport/rng.hpp"

namespace apport {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::size_t check_size(std::size_t n) {
    if (n < 2) throw std::invalid_argument("blowup: n must be >= 2");
    const std::size_t big = (2 * n - 1) * (2 * n - 1);
    if (big > 400) throw std::invalid_argument("blowup: ambient dimension exceeds 400");
    return big;
}

// A_G ⊕ O_{n-1}, size 2n-1
CMatrix embed_adjacency(const CMatrix& a, std::size_t n) {
    CMatrix e(2 * n - 1);
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = 0; j < a.n(); ++j) e(i, j) = a(i, j);
    return e;
}

CMatrix blow(const BlowupOperator& op, const CMatrix& core) {
    const std::size_t m = 2 * op.n - 1;
    return conjugate_by(op.U, kron(identity(m), core));
}

}  // namespace

BlowupOperator block_unitary(std::size_t n) {
    BlowupOperator op;
    op.n = n;
    op.N = check_size(n);
    const std::size_t m = 2 * n - 1;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));

    // diag(w)^i has t-th entry omega^{it}; block (i,j) applies C^j afterwards
    op.U = CMatrix(op.N);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < m; ++t) {
                const std::size_t row = (t + j) % m;  // C e_t = e_{t+1}
                const double ang = -2.0 * kPi * static_cast<double>((i * t) % m) /
                                   static_cast<double>(m);
                op.U(i * m + row, j * m + t) = scale * cd(std::cos(ang), std::sin(ang));
            }

    if (max_abs_diff(op.U * adjoint(op.U), identity(op.N)) > 1e-10)
        throw std::runtime_error("block_unitary: unitarity check failed");
    return op;
}

CMatrix cyclic_blowup(const LoopGraph& g) {
    const std::size_t n = g.n();
    const BlowupOperator op = block_unitary(n);
    return blow(op, embed_adjacency(g.adjacency(), n));
}

CMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
    const std::size_t m = perm.size();
    std::vector<bool> seen(m, false);
    CMatrix p(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (perm[i] >= m || seen[perm[i]])
            throw std::invalid_argument("permutation_matrix: not a permutation");
        seen[perm[i]] = true;
        p(perm[i], i) = 1.0;  // P e_i = e_{perm(i)}
    }
    return p;
}

CMatrix group_element(const CMatrix& p, std::size_t n) {
    const std::size_t m = 2 * n - 1;
    if (p.n() != m) throw std::invalid_argument("group_element: permutation size must be 2n-1");
    // validate 0/1 with one 1 per row and column
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t row_ones = 0, col_ones = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const cd r = p(i, j), c = p(j, i);
            if (r != cd(0.0, 0.0) && r != cd(1.0, 0.0))
                throw std::invalid_argument("group_element: not a permutation matrix");
            if (r == cd(1.0, 0.0)) ++row_ones;
            if (c == cd(1.0, 0.0)) ++col_ones;
        }
        if (row_ones != 1 || col_ones != 1)
            throw std::invalid_argument("group_element: not a permutation matrix");
    }
    const BlowupOperator op = block_unitary(n);
    return blow(op, p);
}

CMatrix group_element(const std::vector<std::size_t>& perm, std::size_t n) {
    return group_element(permutation_matrix(perm), n);
}

ApportionReport apportion_blowup(const LoopGraph& g, const std::vector<std::size_t>& labels) {
    const std::size_t n = g.n();
    check_size(n);
    if (!is_rho_labeling(g, labels))
        throw std::domain_error("apportion_blowup: labels are not a rho-labeling");

    // vertex v goes to position labels[v]; unused positions in increasing order
    const std::size_t m = 2 * n - 1;
    std::vector<std::size_t> perm(m, m);
    std::vector<bool> used(m, false);
    for (std::size_t v = 0; v < n; ++v) {
        perm[v] = labels[v];
        used[labels[v]] = true;
    }
    std::size_t next = 0;
    for (std::size_t v = n; v < m; ++v) {
        while (used[next]) ++next;
        perm[v] = next;
        used[next] = true;
    }

    const CMatrix h = cyclic_blowup(g);
    const CMatrix q = group_element(perm, n);

    ApportionReport rep;
    rep.transform = q;
    rep.result = conjugate_by(q, h);
    rep.kappa = 1.0 / static_cast<double>(m);
    double dev = 0.0;
    for (const cd& z : rep.result.entries()) dev = std::max(dev, std::abs(std::abs(z) - rep.kappa));
    rep.residual = dev;
    rep.status = is_uniform(rep.result, 1e-9).first ? ApportionStatus::uniform
                                                    : ApportionStatus::inconclusive;
    return rep;
}

CMatrix tf_matrix(const ZnFunction& f) {
    const std::size_t n = f.n();
    const BlowupOperator op = block_unitary(n);
    CMatrix af(n);
    for (std::size_t i = 0; i < n; ++i) af(i, f(i)) = 1.0;
    return blow(op, embed_adjacency(af, n));
}

FrakMinResult frak_u_min(const CMatrix& a, std::size_t n, FrakMode mode, std::size_t samples,
                         std::uint64_t seed) {
    const std::size_t big = check_size(n);
    if (a.n() != big) throw std::invalid_argument("frak_u_min: matrix size must be (2n-1)^2");
    const std::size_t m = 2 * n - 1;

    std::size_t fact = 1;
    for (std::size_t k = 2; k <= m; ++k) fact *= k;
    if (mode == FrakMode::exhaustive && fact > 1000000)
        throw std::invalid_argument("frak_u_min: exhaustive mode capped at (2n-1)! <= 10^6");

    const BlowupOperator op = block_unitary(n);
    FrakMinResult out;
    out.value = std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<std::size_t>& perm) {
        const CMatrix v = blow(op, permutation_matrix(perm));
        const double val = max_abs(conjugate_by(v, a));
        if (val < out.value) {
            out.value = val;
            out.best_perm = perm;
        }
    };

    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    if (mode == FrakMode::exhaustive) {
        do {
            consider(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        consider(perm);  // identity first
        Rng rng(seed);
        for (std::size_t s = 0; s + 1 < samples; ++s) {
            for (std::size_t i = m; i-- > 1;)
                std::swap(perm[i], perm[rng.next_below(i + 1)]);
            consider(perm);
        }
    }
    return out;
}

bool orthogonality_check(const ZnFunction& f, const std::vector<std::size_t>& perm, double tol) {
    if (!f.contracting()) throw std::invalid_argument("orthogonality_check: f must be contracting");
    const std::size_t n = f.n();
    const BlowupOperator op = block_unitary(n);
    const CMatrix v = group_element(perm, n);

    CMatrix af(n);
    for (std::size_t i = 0; i < n; ++i) af(i, f(i)) = 1.0;
    CMatrix rest = transpose(af);
    rest(0, 0) -= 1.0;  // (A_f - E_00)^T

    const CMatrix left = conjugate_by(v, blow(op, embed_adjacency(af, n)));
    const CMatrix right = conjugate_by(v, blow(op, embed_adjacency(rest, n)));
    return max_abs(hadamard(left, right)) <= tol;
}

std::optional<std::vector<std::size_t>> find_uprime_apportionment(const LoopGraph& g, double tol) {
    const std::size_t n = g.n();
    check_size(n);
    const std::size_t m = 2 * n - 1;
    const BlowupOperator op = block_unitary(n);
    const CMatrix h = blow(op, embed_adjacency(g.adjacency(), n));

    std::vector<std::size_t> inner(n);
    for (std::size_t i = 0; i < n; ++i) inner[i] = i;
    do {
        std::vector<std::size_t> perm(m);
        for (std::size_t i = 0; i < n; ++i) perm[i] = inner[i];
        for (std::size_t i = n; i < m; ++i) perm[i] = i;
        const CMatrix q = blow(op, permutation_matrix(perm));
        if (is_uniform(conjugate_by(q, h), tol).first) return perm;
    } while (std::next_permutation(inner.begin(), inner.end()));
    return std::nullopt;
}

}  // namespace apport

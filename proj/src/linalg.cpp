#include "apport/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "apport/rng.hpp"

namespace apport {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_square_nonempty(const CMatrix& a, const char* who) {
    if (a.n() == 0) throw std::invalid_argument(std::string(who) + ": empty matrix");
}

}  // namespace

std::vector<double> singular_values(const CMatrix& a) {
    // sigma_k = sqrt(lambda_k(A^* A)); tiny negative eigenvalues are rounding
    const CMatrix g = adjoint(a) * a;
    HermitianEig eig = hermitian_eig(g);
    std::vector<double> s(eig.values.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::sqrt(std::max(0.0, eig.values[k]));
    return s;
}

std::vector<double> qr_column_pivot_rdiag(const CMatrix& a) {
    const std::size_t n = a.n();
    CMatrix r = a;
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        // pivot: column with the largest residual norm
        std::size_t piv = k;
        double best = -1.0;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += std::norm(r(i, j));
            if (s > best) {
                best = s;
                piv = j;
            }
        }
        if (piv != k)
            for (std::size_t i = 0; i < n; ++i) std::swap(r(i, k), r(i, piv));
        const double colnorm = std::sqrt(std::max(0.0, best));
        out.push_back(colnorm);
        if (colnorm == 0.0) continue;
        // reflector sending the pivot column to colnorm * e_k
        CVector u(n - k);
        for (std::size_t i = k; i < n; ++i) u[i - k] = r(i, k);
        const cd phase = (std::abs(u[0]) == 0.0) ? cd(1.0, 0.0) : u[0] / std::abs(u[0]);
        u[0] += phase * colnorm;
        const double unorm2 = [&] {
            double s = 0.0;
            for (const cd& z : u) s += std::norm(z);
            return s;
        }();
        if (unorm2 == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) {
            cd proj(0.0, 0.0);
            for (std::size_t i = k; i < n; ++i) proj += std::conj(u[i - k]) * r(i, j);
            proj *= 2.0 / unorm2;
            for (std::size_t i = k; i < n; ++i) r(i, j) -= proj * u[i - k];
        }
    }
    return out;
}

NormReport norms(const CMatrix& a) {
    require_square_nonempty(a, "norms");
    NormReport r;
    r.max = max_abs(a);
    r.frobenius = frobenius(a);
    const std::vector<double> s = singular_values(a);
    r.spectral = s.empty() ? 0.0 : s.front();
    r.nuclear = std::accumulate(s.begin(), s.end(), 0.0);
    return r;
}

CMatrix dft(std::size_t n) {
    if (n < 1) throw std::invalid_argument("dft: n must be >= 1");
    CMatrix f(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            // reduce k*j mod n before evaluating the root of unity
            const std::size_t e = (k * j) % n;
            const double t = -2.0 * kPi * static_cast<double>(e) / static_cast<double>(n);
            f(k, j) = scale * cd(std::cos(t), std::sin(t));
        }
    return f;
}

CMatrix cyclic_shift(std::size_t n) {
    if (n < 1) throw std::invalid_argument("cyclic_shift: n must be >= 1");
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) c((i + 1) % n, i) = 1.0;
    return c;
}

CMatrix householder(const CVector& v, const CVector& w) {
    if (v.size() != w.size()) throw std::invalid_argument("householder: size mismatch");
    const std::size_t n = v.size();
    const double nv = norm2(v), nw = norm2(w);
    if (std::abs(nv - nw) > 1e-10 * std::max(1.0, nv))
        throw std::invalid_argument("householder: ||v|| != ||w||");
    CVector u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = v[i] - w[i];
    if (norm2(u) <= 1e-13 * std::max(1.0, nv)) return identity(n);
    const cd denom = dot(u, v);
    CMatrix h = identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) -= u[i] * std::conj(u[j]) / denom;
    return h;
}

HermitianEig hermitian_eig(const CMatrix& h) {
    require_square_nonempty(h, "hermitian_eig");
    const std::size_t n = h.n();
    const double scale = std::max(1.0, max_abs(h));
    if (max_abs_diff(h, adjoint(h)) > 1e-10 * scale)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");

    CMatrix a = h;
    CMatrix v = identity(n);
    const double fnorm = std::max(1.0, frobenius(a));

    auto offdiag = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && offdiag() > 1e-12 * fnorm; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cd apq = a(p, q);
                const double m = std::abs(apq);
                if (m <= 1e-300) continue;
                const cd phase = apq / m;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                // zero the (p,q) entry of the phase-reduced real 2x2 block
                double t;
                if (tau >= 0.0)
                    t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cd gpq = -s * phase;              // G(p,q)
                const cd gqp = s * std::conj(phase);    // G(q,p)
                // columns: A <- A G
                for (std::size_t k = 0; k < n; ++k) {
                    const cd akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * gqp;
                    a(k, q) = akp * gpq + akq * c;
                }
                // rows: A <- G^* A
                for (std::size_t k = 0; k < n; ++k) {
                    const cd apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + c * aqk;
                }
                // accumulate V <- V G
                for (std::size_t k = 0; k < n; ++k) {
                    const cd vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * c;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    HermitianEig out;
    out.values.resize(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
    out.vectors = CMatrix(n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

namespace {

// Monic characteristic polynomial coefficients c[0..n-1] of
// p(x) = x^n + c[n-1] x^{n-1} + ... + c[0], by Faddeev-LeVerrier.
std::vector<cd> char_poly(const CMatrix& a) {
    const std::size_t n = a.n();
    std::vector<cd> c(n, cd(0.0, 0.0));
    CMatrix b = identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const CMatrix m = a * b;
        cd tr(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        const cd ck = -tr / static_cast<double>(k);
        c[n - k] = ck;
        b = m;
        for (std::size_t i = 0; i < n; ++i) b(i, i) += ck;
    }
    return c;
}

cd eval_monic(const std::vector<cd>& c, cd x) {
    cd r(1.0, 0.0);
    for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
}

}  // namespace

std::vector<cd> small_eig(const CMatrix& a) {
    require_square_nonempty(a, "small_eig");
    const std::size_t n = a.n();
    if (n > 8) throw std::invalid_argument("small_eig: supported only for n <= 8");
    if (n == 1) return {a(0, 0)};

    const std::vector<cd> c = char_poly(a);
    double radius = 0.0;
    for (const cd& z : c) radius = std::max(radius, std::abs(z));
    radius = 1.0 + radius;  // Cauchy bound for the monic polynomial

    std::vector<cd> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = radius * cd(std::cos(t), std::sin(t));
    }

    bool converged = false;
    for (int iter = 0; iter < 1000 && !converged; ++iter) {
        converged = true;
        for (std::size_t k = 0; k < n; ++k) {
            cd denom(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (denom == cd(0.0, 0.0)) {
                z[k] += cd(1e-8, 1e-8);
                converged = false;
                continue;
            }
            const cd delta = eval_monic(c, z[k]) / denom;
            z[k] -= delta;
            if (std::abs(delta) > 1e-14 * (1.0 + std::abs(z[k]))) converged = false;
        }
    }
    if (!converged) throw std::runtime_error("small_eig: root iteration did not converge");

    // residual check against the coefficient scale
    for (const cd& root : z) {
        double scale = std::pow(std::abs(root) + 1.0, static_cast<double>(n));
        if (std::abs(eval_monic(c, root)) > 1e-6 * scale)
            throw std::runtime_error("small_eig: root residual too large");
    }

    std::sort(z.begin(), z.end(), [](const cd& x, const cd& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return z;
}

std::vector<cd> normal_eig(const CMatrix& a) {
    require_square_nonempty(a, "normal_eig");
    const std::size_t n = a.n();
    const double scale = std::max(1.0, frobenius(a));
    if (max_abs_diff(a * adjoint(a), adjoint(a) * a) > 1e-8 * scale * scale)
        throw std::invalid_argument("normal_eig: input is not normal");

    const CMatrix ah = adjoint(a);
    CMatrix re(n), im(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            re(i, j) = 0.5 * (a(i, j) + ah(i, j));
            im(i, j) = cd(0.0, -0.5) * (a(i, j) - ah(i, j));
        }

    HermitianEig eh = hermitian_eig(re);
    // K restricted to each eigenspace of Re(A) is Hermitian; diagonalize per cluster
    const CMatrix k1 = adjoint(eh.vectors) * im * eh.vectors;
    std::vector<cd> out;
    out.reserve(n);
    const double cluster_tol = 1e-6 * (1.0 + std::abs(eh.values.empty() ? 0.0 : eh.values[0]));
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && std::abs(eh.values[stop - 1] - eh.values[stop]) <= cluster_tol) ++stop;
        const std::size_t m = stop - start;
        CMatrix block(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) block(i, j) = k1(start + i, start + j);
        // symmetrize away the rounding noise before the inner solve
        block = cd(0.5, 0.0) * (block + adjoint(block));
        HermitianEig ek = hermitian_eig(block);
        for (std::size_t i = 0; i < m; ++i)
            out.emplace_back(eh.values[start + i], ek.values[i]);
        start = stop;
    }
    std::sort(out.begin(), out.end(), [](const cd& x, const cd& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return out;
}

std::pair<bool, double> is_uniform(const CMatrix& a, double tol) {
    require_square_nonempty(a, "is_uniform");
    if (tol < 0.0) throw std::invalid_argument("is_uniform: tol must be >= 0");
    double c = 0.0;
    for (const cd& z : a.entries()) c += std::abs(z);
    c /= static_cast<double>(a.entries().size());
    double dev = 0.0;
    for (const cd& z : a.entries()) dev = std::max(dev, std::abs(std::abs(z) - c));
    return {dev <= tol * (c + 1.0), c};
}

double uniformity_ratio(const CMatrix& a) {
    require_square_nonempty(a, "uniformity_ratio");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const cd& z : a.entries()) {
        const double m = std::abs(z);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    if (hi == 0.0) throw std::domain_error("uniformity_ratio: zero matrix");
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

CMatrix extend_to_unitary(const std::vector<CVector>& cols, std::size_t n) {
    for (const CVector& c : cols)
        if (c.size() != n) throw std::invalid_argument("extend_to_unitary: column size mismatch");
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const cd g = dot(cols[i], cols[j]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10)
                throw std::invalid_argument("extend_to_unitary: columns not orthonormal");
        }

    std::vector<CVector> basis = cols;
    for (std::size_t j = 0; j < n && basis.size() < n; ++j) {
        CVector v(n, cd(0.0, 0.0));
        v[j] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const CVector& q : basis) {
                const cd g = dot(q, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= g * q[i];
            }
        const double r = norm2(v);
        if (r < 1e-8) continue;
        basis.push_back(scale(1.0 / r, std::move(v)));
    }
    if (basis.size() != n)
        throw std::runtime_error("extend_to_unitary: failed to complete the basis");

    CMatrix u(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = basis[c][r];
    return u;
}

namespace {

struct Lu {
    CMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

Lu lu_factor(const CMatrix& a) {
    const std::size_t n = a.n();
    Lu f{a, std::vector<std::size_t>(n), 1, false};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f.lu(i, k)) > best) {
                best = std::abs(f.lu(i, k));
                piv = i;
            }
        if (best == 0.0) {
            f.singular = true;
            return f;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            f.lu(i, k) /= f.lu(k, k);
            const cd lik = f.lu(i, k);
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
        }
    }
    return f;
}

CVector lu_solve(const Lu& f, const CVector& b) {
    const std::size_t n = f.lu.n();
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

}  // namespace

cd det(const CMatrix& a) {
    require_square_nonempty(a, "det");
    const Lu f = lu_factor(a);
    if (f.singular) return cd(0.0, 0.0);
    cd d(static_cast<double>(f.sign), 0.0);
    for (std::size_t i = 0; i < a.n(); ++i) d *= f.lu(i, i);
    return d;
}

CMatrix inverse(const CMatrix& a) {
    require_square_nonempty(a, "inverse");
    const std::size_t n = a.n();
    const Lu f = lu_factor(a);
    if (f.singular) throw std::domain_error("inverse: singular matrix");
    CMatrix inv(n);
    CVector e(n, cd(0.0, 0.0));
    for (std::size_t c = 0; c < n; ++c) {
        e[c] = 1.0;
        const CVector x = lu_solve(f, e);
        e[c] = 0.0;
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = x[r];
    }
    return inv;
}

double cond_estimate(const CMatrix& a) {
    try {
        return frobenius(a) * frobenius(inverse(a));
    } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

CMatrix random_unitary(std::size_t n, Rng& rng) {
    std::vector<CVector> cols;
    cols.reserve(n);
    while (cols.size() < n) {
        CVector v(n);
        for (cd& z : v) z = rng.next_cgaussian();
        for (int pass = 0; pass < 2; ++pass)
            for (const CVector& q : cols) {
                const cd g = dot(q, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= g * q[i];
            }
        const double r = norm2(v);
        if (r < 1e-6) continue;
        cols.push_back(scale(1.0 / r, std::move(v)));
    }
    CMatrix u(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = cols[c][r];
    return u;
}

}  // namespace apport

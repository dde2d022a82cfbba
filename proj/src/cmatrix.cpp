#include "apport/cmatrix.hpp"

#include <cmath>

namespace apport {

bool CMatrix::finite() const {
    for (const cd& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cd s) {
    for (cd& z : a_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cd s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.n();
    if (b.n() != n) throw std::invalid_argument("matrix size mismatch");
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cd aik = a(i, k);
            if (aik == cd(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CVector operator*(const CMatrix& a, const CVector& x) {
    const std::size_t n = a.n();
    if (x.size() != n) throw std::invalid_argument("matrix/vector size mismatch");
    CVector y(n, cd(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
    return y;
}

CMatrix identity(std::size_t n) {
    CMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
    return a;
}

CMatrix zeros(std::size_t n) { return CMatrix(n); }

CMatrix ones(std::size_t n) {
    CMatrix a(n);
    for (cd& z : a.entries()) z = 1.0;
    return a;
}

CMatrix unit_matrix(std::size_t n, std::size_t k, std::size_t j) {
    CMatrix a(n);
    a(k, j) = 1.0;
    return a;
}

CMatrix diag(const CVector& d) {
    CMatrix a(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
    return a;
}

CMatrix adjoint(const CMatrix& a) {
    const std::size_t n = a.n();
    CMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(j, i) = std::conj(a(i, j));
    return b;
}

CMatrix transpose(const CMatrix& a) {
    const std::size_t n = a.n();
    CMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(j, i) = a(i, j);
    return b;
}

CMatrix conjugate(const CMatrix& a) {
    CMatrix b = a;
    for (cd& z : b.entries()) z = std::conj(z);
    return b;
}

CMatrix conjugate_by(const CMatrix& b, const CMatrix& a) { return b * a * adjoint(b); }

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const cd& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

double frobenius(const CMatrix& a) {
    double s = 0.0;
    for (const cd& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.n() != b.n()) throw std::invalid_argument("matrix size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.n(), m = b.n();
    CMatrix c(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cd aij = a(i, j);
            if (aij == cd(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                    c(i * m + k, j * m + l) = aij * b(k, l);
        }
    return c;
}

CVector vec(const CMatrix& a) {
    const std::size_t n = a.n();
    CVector v;
    v.reserve(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v.push_back(a(i, j));
    return v;
}

CMatrix hadamard(const CMatrix& a, const CMatrix& b) {
    if (a.n() != b.n()) throw std::invalid_argument("matrix size mismatch");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] *= b.entries()[i];
    return c;
}

CMatrix hadamard_inverse(const CMatrix& a) {
    CMatrix c = a;
    for (cd& z : c.entries()) {
        if (z == cd(0.0, 0.0))
            throw std::domain_error("hadamard_inverse: zero entry");
        z = 1.0 / z;
    }
    return c;
}

cd dot(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    cd s(0.0, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm2(const CVector& x) {
    double s = 0.0;
    for (const cd& z : x) s += std::norm(z);
    return std::sqrt(s);
}

CVector scale(cd s, CVector x) {
    for (cd& z : x) z *= s;
    return x;
}

CMatrix outer(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    CMatrix a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) a(i, j) = x[i] * std::conj(y[j]);
    return a;
}

}  // namespace apport

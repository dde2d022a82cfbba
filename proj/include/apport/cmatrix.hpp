#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace apport {

using cd = std::complex<double>;
using CVector = std::vector<cd>;

/// Dense square complex matrix, row-major, 0-indexed.
/// The universal carrier for every matrix in the library.
class CMatrix {
public:
    CMatrix() : n_(0) {}
    explicit CMatrix(std::size_t n) : n_(n), a_(n * n, cd(0.0, 0.0)) {}
    CMatrix(std::size_t n, std::vector<cd> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != n_ * n_)
            throw std::invalid_argument("CMatrix: entries length must be n^2");
    }

    std::size_t n() const { return n_; }

    cd& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    const std::vector<cd>& entries() const { return a_; }
    std::vector<cd>& entries() { return a_; }

    bool finite() const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cd s);

private:
    std::size_t n_;
    std::vector<cd> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cd s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);  // matrix product
CVector operator*(const CMatrix& a, const CVector& x);

CMatrix identity(std::size_t n);
CMatrix zeros(std::size_t n);
CMatrix ones(std::size_t n);                                  // J_n
CMatrix unit_matrix(std::size_t n, std::size_t k, std::size_t j);  // E_kj
CMatrix diag(const CVector& d);
CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);

/// B A B^*
CMatrix conjugate_by(const CMatrix& b, const CMatrix& a);

double max_abs(const CMatrix& a);
double frobenius(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector vec(const CMatrix& a);                 // column-stacking
CMatrix hadamard(const CMatrix& a, const CMatrix& b);
CMatrix hadamard_inverse(const CMatrix& a);    // entrywise inverse; zero entry -> domain error

// vector helpers
cd dot(const CVector& x, const CVector& y);    // x^* y
double norm2(const CVector& x);
CVector scale(cd s, CVector x);
/// x y^* as a matrix
CMatrix outer(const CVector& x, const CVector& y);

}  // namespace apport

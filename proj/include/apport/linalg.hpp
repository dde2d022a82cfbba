#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "apport/cmatrix.hpp"

namespace apport {

/// Norm summary. max <= spectral, frobenius <= nuclear, frobenius/n <= max.
struct NormReport {
    double max = 0.0;        // largest |a_kj|
    double frobenius = 0.0;  // Schatten-2
    double spectral = 0.0;   // sigma_0, Schatten-inf
    double nuclear = 0.0;    // Schatten-1
};

NormReport norms(const CMatrix& a);

/// Singular values, descending. Computed from the Hermitian eigenvalues of A^*A.
std::vector<double> singular_values(const CMatrix& a);

/// |R_kk| from Householder QR with column pivoting, nonincreasing. A sharp
/// rank probe: for an exactly rank-deficient matrix the trailing values sit
/// at rounding level, unlike Gram-matrix singular values.
std::vector<double> qr_column_pivot_rdiag(const CMatrix& a);

/// DFT matrix, (k,j)-entry omega^{kj}/sqrt(n) with omega = exp(-2*pi*i/n),
/// the root for which the classical eigenvalue multiplicity table holds.
CMatrix dft(std::size_t n);

/// Cyclic permutation matrix with C e_i = e_{(i+1) mod n}.
CMatrix cyclic_shift(std::size_t n);

/// Unitary U with Uv = w, built as I - u u^*/(u^* v), u = v - w.
/// Requires ||v|| = ||w||; returns the identity when v = w.
CMatrix householder(const CVector& v, const CVector& w);

struct HermitianEig {
    std::vector<double> values;  // nonincreasing
    CMatrix vectors;             // unitary, columns are eigenvectors
};

/// Cyclic complex Jacobi sweeps; off-diagonal Frobenius threshold 1e-12
/// relative, at most 100 sweeps. Input must be Hermitian.
HermitianEig hermitian_eig(const CMatrix& h);

/// Eigenvalues of a small (n <= 8) matrix: Durand-Kerner on the
/// characteristic polynomial from the Faddeev-LeVerrier recurrence.
/// Sorted by descending real part, then descending imaginary part.
std::vector<cd> small_eig(const CMatrix& a);

/// Eigenvalues of a normal matrix of any supported size, via the commuting
/// Hermitian pair (A+A^*)/2 and (A-A^*)/(2i). Used where small_eig's size
/// cap does not reach (e.g. DFT spectra).
std::vector<cd> normal_eig(const CMatrix& a);

/// (flag, c): flag is true iff max | |a_kj| - c | <= tol*(c+1) where c is
/// the mean entry magnitude.
std::pair<bool, double> is_uniform(const CMatrix& a, double tol = 1e-9);

/// max|a_ij| / min|a_ij|; +infinity when the matrix mixes zero and nonzero
/// entries. The zero matrix is rejected.
double uniformity_ratio(const CMatrix& a);

/// Complete pairwise-orthonormal columns to a unitary matrix by modified
/// Gram-Schmidt against the standard basis, skipping candidates whose
/// residual norm falls below 1e-8.
CMatrix extend_to_unitary(const std::vector<CVector>& cols, std::size_t n);

// --- LU-based utilities (partial pivoting) ---

cd det(const CMatrix& a);
CMatrix inverse(const CMatrix& a);  // throws domain_error when singular
/// Frobenius condition estimate ||A||_F * ||A^{-1}||_F.
double cond_estimate(const CMatrix& a);

/// QR-orthonormalization of a seeded random Gaussian matrix.
CMatrix random_unitary(std::size_t n, class Rng& rng);

}  // namespace apport

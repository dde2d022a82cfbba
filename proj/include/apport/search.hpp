#pragma once

#include <cstdint>
#include <optional>

#include "apport/cmatrix.hpp"
#include "apport/report.hpp"

namespace apport {

struct SearchOptions {
    int restarts = 8;
    int iters = 600;          // inner iterations per restart, split across the p schedule
    std::uint64_t seed = 1;
    double tol = 1e-6;        // uniformity tolerance for the verdict
    int jobs = 1;             // parallel restarts; reduction is deterministic
};

/// Spectral test for "M apportions A": the DFT of vec(B ∘ conj(B)) with
/// B = M A M^{-1} must be supported on its first component.
bool additive_apport_test(const CMatrix& a, const CMatrix& m);

/// Minimize a smoothed max of |U A U^*| over unitaries: entrywise power mean
/// with p annealed 2..64, Cayley updates from central finite-difference
/// gradients, backtracking step size. Always returns the best iterate found.
ApportionReport search_unitary(const CMatrix& a, const SearchOptions& opt = {});

/// Same machinery over invertible M with det normalized to one after each
/// step and a conditioning penalty 1e-8 * cond^2.
ApportionReport search_gl(const CMatrix& a, const SearchOptions& opt = {});

/// || A - kappa^2 M^{-1} (conj(M A M^{-1}))^{∘-1} M ||_max. Below 1e-8
/// whenever M apportions A with constant kappa.
double verify_decomposition(const CMatrix& a, const CMatrix& m, double kappa);

/// Which real pairs {1, r} arise as spectra of 2x2 uniform matrices:
/// only r = 0 (witness J_2/2) and r = -1 (witness H_2/sqrt(2)).
std::pair<bool, std::optional<CMatrix>> realizable_real_pair(double r);

/// Whether {lambda, lambda} is realizable as a 2x2 uniform spectrum: only
/// lambda = 0.
bool constant_spectrum_check(cd lambda);

/// Closed form of M diag(1, c) M^{-1} for M = [[x, y], [z, (1+yz)/x]].
CMatrix similarity_2x2(cd c, cd x, cd y, cd z);

/// The one-parameter family apportioning diag(2, 0): M = [[a, 1/a],
/// [a, e^{i theta}/a]], with constant 1/|sin(theta/2)|.
ApportionReport example_family(double a, double theta);

/// (F_r ⊗ I)(E_00 ⊗ B)(F_r ⊗ I)^*: uniform, spectrum spec(B) plus (r-1)n zeros.
CMatrix spectra_zero_pad(const CMatrix& b, std::size_t r);

/// Kronecker product of two uniform matrices; spectrum is the pairwise product.
CMatrix kron_uniform(const CMatrix& b1, const CMatrix& b2);

/// Minimize the uniformity ratio of U A U^* over unitaries (log-ratio
/// surrogate); returns the best exact ratio found, always >= 1 up to rounding.
double uar_estimate(const CMatrix& a, const SearchOptions& opt = {});

}  // namespace apport

#pragma once

#include <optional>

#include "apport/cmatrix.hpp"

namespace apport {

enum class CertificateKind { translation_violation, psd_rank, none_found };

std::string to_string(CertificateKind k);

/// A certificate witnesses NON-apportionability by unitary similarity.
/// For translation_violation, lhs = |c| and rhs is the translation bound,
/// with lhs > rhs strictly. For psd_rank, lhs is the numerical rank and
/// rhs = 1. none_found is inconclusive, not a proof of apportionability.
struct Certificate {
    CertificateKind kind = CertificateKind::none_found;
    cd witness_c = cd(0.0, 0.0);
    double lhs = 0.0;
    double rhs = 0.0;
};

/// The translation bound: S/n + sqrt((S/n)^2 + ||A - cI||_F^2 / (n(n-1)))
/// with S = sum_k |a_kk - c|. A shift c with |c| strictly above this bound
/// rules out unitary apportionability.
double translation_rhs(const CMatrix& a, cd c);

/// Grid search over shifts c (diagonal entries, their mean, and a radial
/// grid) followed by local refinement of |c| - rhs(c). Returns the first
/// strict violation found, or none_found.
Certificate certify_not_u_apportionable(const CMatrix& a);

/// Positive semidefinite test: unitarily apportionable iff numerical rank
/// is at most one. Returns a psd_rank certificate when the rank is >= 2.
Certificate psd_apportionability(const CMatrix& h);

struct UBounds {
    double lower = 0.0;                 // ||A||_F / n
    double upper = 0.0;                 // ||A||_2
    std::optional<double> normal_upper; // ||A||_* / n, present when A is normal
};

UBounds u_bounds(const CMatrix& a);

/// B^*B + (cos(theta) - 1) I for a d x n frame B with unit columns, given as
/// a list of n columns of length d. Unitary apportionability of the result
/// is equivalent to rotating B into an equiangular frame with angle theta.
CMatrix equiangular_test_matrix(const std::vector<CVector>& columns, double theta);

}  // namespace apport

#pragma once

#include "apport/cmatrix.hpp"
#include "apport/report.hpp"

namespace apport {

/// Canonical form of a rank-one matrix: U A U^* = gamma e_0 (alpha e_0^T + beta e_1^T)
/// with |gamma| = 1, alpha = |tr A|, beta >= 0, U = H_2 H_1 unitary.
struct RankOneCanonical {
    cd gamma;
    double alpha = 0.0;
    double beta = 0.0;
    CMatrix U;
};

/// A = x y^* with ||x|| = 1. Rejects matrices whose numerical rank is not one
/// (relative spectral gap sigma_1/sigma_0 >= 1e-10).
std::pair<CVector, CVector> factor_rank_one(const CMatrix& a);

RankOneCanonical canonical_rank_one(const CMatrix& a);

/// Unitary apportionment of a matrix of rank at most one. The zero matrix is
/// returned unchanged with kappa = 0.
ApportionReport apportion_rank_one(const CMatrix& a);

/// Branch parameters of the odd-dimension uniform column construction:
/// a = (1 - sqrt(beta^2+1)) / ((n-1) sqrt(n) beta), b = sqrt(1/(n-1) - n a^2).
std::pair<double, double> odd_branch_parameters(std::size_t n, double beta);

}  // namespace apport

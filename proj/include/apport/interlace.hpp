#pragma once

#include <vector>

#include "apport/cmatrix.hpp"
#include "apport/graphs.hpp"

namespace apport {

/// The mask family of a Hermitian matrix along a gracefully labelled
/// loop-graph: member k zeroes the entries on the graph's edge pattern
/// shifted cyclically by k, negating the shifted loop position. thetas are
/// the n^2 member eigenvalues in nonincreasing order.
struct MaskFamily {
    CMatrix base;
    LoopGraph graph;
    std::vector<CMatrix> members;
    std::vector<double> thetas;
};

MaskFamily mask_family(const CMatrix& m, const LoopGraph& g);

/// || sum_k M_k - (n-2) M ||_max; below 1e-12 for valid inputs. n >= 4.
double check_sum_identity(const MaskFamily& fam);

struct InterlaceRow {
    double lower = 0.0;
    double lambda = 0.0;
    double upper = 0.0;
    bool pass = false;
};

/// Per-index bounds (n/(n-2)) theta_{l+(n^2-n)} <= lambda_l(M) <= (n/(n-2)) theta_l
/// for l = 0..n-1, with tolerance 1e-9*(1+|lambda_l|). n >= 4.
std::vector<InterlaceRow> interlacing_bounds(const MaskFamily& fam);

}  // namespace apport

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "apport/cmatrix.hpp"
#include "apport/graphs.hpp"
#include "apport/report.hpp"

namespace apport {

/// The block unitary of the cyclic blowup: ambient dimension N = (2n-1)^2,
/// block (i,j) equal to C_{2n-1}^j diag(w)^i / sqrt(2n-1) with
/// w = (1, omega, ..., omega^{2n-2}).
struct BlowupOperator {
    std::size_t n = 0;
    std::size_t N = 0;
    CMatrix U;
};

/// Builds the operator and verifies unitarity to 1e-10. Requires n >= 2 and
/// N = (2n-1)^2 <= 400.
BlowupOperator block_unitary(std::size_t n);

/// H_G = U (I ⊗ (A_G ⊕ O_{n-1})) U^*, Hermitian, for a loop-graph on n vertices.
CMatrix cyclic_blowup(const LoopGraph& g);

/// U (I ⊗ P) U^* for a permutation matrix P of size 2n-1.
CMatrix group_element(const CMatrix& p, std::size_t n);
/// Same, from a permutation table (perm[i] = image of i).
CMatrix group_element(const std::vector<std::size_t>& perm, std::size_t n);

CMatrix permutation_matrix(const std::vector<std::size_t>& perm);

/// Apportion the cyclic blowup of g using a rho-labeling. labels[v] is the
/// position of vertex v in the complete loop-graph on 2n-1 vertices; unused
/// positions are filled in increasing order.
ApportionReport apportion_blowup(const LoopGraph& g, const std::vector<std::size_t>& labels);

/// T_f = U (I ⊗ (A_f ⊕ O_{n-1})) U^* where A_f is the directed adjacency of f.
CMatrix tf_matrix(const ZnFunction& f);

enum class FrakMode { exhaustive, sampled };

struct FrakMinResult {
    double value = 0.0;
    std::vector<std::size_t> best_perm;
};

/// min over permutations P of size 2n-1 of || U(I⊗P)U^* A U(I⊗P^T)U^* ||_max.
/// Exhaustive mode requires (2n-1)! <= 10^6; sampled mode draws `samples`
/// seeded permutations (the identity is always included).
FrakMinResult frak_u_min(const CMatrix& a, std::size_t n, FrakMode mode,
                         std::size_t samples = 200, std::uint64_t seed = 1);

/// Verifies the support-disjointness identity behind the T_f gap: the
/// entrywise product of V T_f V^* with the conjugated transpose-part blowup
/// vanishes, for V the group element of `perm`.
bool orthogonality_check(const ZnFunction& f, const std::vector<std::size_t>& perm,
                         double tol = 1e-10);

/// Exhaustive search over the n! block permutations P' ⊕ I_{n-1} for one
/// that makes the blowup of g uniform. Returns the permutation on success.
std::optional<std::vector<std::size_t>> find_uprime_apportionment(const LoopGraph& g,
                                                                  double tol = 1e-9);

}  // namespace apport

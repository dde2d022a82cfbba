#pragma once

#include <map>
#include <vector>

#include "apport/graphs.hpp"

namespace apport {

/// Integer linear form over variables x_0..x_{n-1}, sign-canonicalized so
/// the first nonzero coefficient is positive. Nonzero forms arising from
/// edge-labeling polynomials are binomials (coefficients +-1 on two
/// variables), trinomials (a +-2 against two opposite +-1) or quadrinomials
/// (two +1 and two -1).
struct LinearForm {
    std::vector<long long> coeffs;

    static LinearForm canonical(std::vector<long long> c);
    /// canonical form plus the sign flipped away (+1 or -1)
    static std::pair<LinearForm, int> canonical_signed(std::vector<long long> c);
    bool is_zero() const;
    bool operator<(const LinearForm& o) const { return coeffs < o.coeffs; }
    bool operator==(const LinearForm& o) const { return coeffs == o.coeffs; }
};

enum class FormClass { zero, binomial, trinomial, quadrinomial, other };
FormClass classify(const LinearForm& f);

/// Multiset of linear forms with multiplicities; total multiplicity n(n-1)
/// for a factor list produced from a function on Z_n. `sign` carries the
/// product of the sign flips absorbed by canonicalization, so that the
/// multiset represents the polynomial exactly.
struct FactorMultiset {
    std::size_t n = 0;
    std::map<LinearForm, long long> counts;
    int sign = 1;

    long long total() const;
    bool has_zero_form() const;
};

/// The factored edge-labeling polynomial of f: for each pair i < j the two
/// factors (x_f(j) - x_j) +- (x_f(i) - x_i), canonicalized. An all-zero form
/// marks an identically zero polynomial.
FactorMultiset edge_labeling_factors(const ZnFunction& f);

/// True iff f has at most one fixed point and no 2-cycles, which is exactly
/// when the edge-labeling polynomial is not identically zero.
bool pf_nonzero(const ZnFunction& f);

struct RecoveredGraph {
    bool has_fixed_point = false;
    LoopGraph graph;  // non-loop edges only; the loop vertex is not recoverable
};

/// Recovery algorithm: pair each trinomial with its binomial, then read the
/// surviving squared binomials as edges. Rejects factor lists that are not
/// a valid factorization (unpairable trinomial, odd leftover multiplicity).
RecoveredGraph recover_graph(const FactorMultiset& fac);

/// Orient a connected graph with n-1 non-loop edges away from the fixed
/// point: f(fixed_point) = fixed_point and f(v) = parent of v.
ZnFunction recover_function(const LoopGraph& g, std::size_t fixed_point);

/// Exact evaluation of the factored polynomial at an integer point.
__int128 evaluate_factors(const FactorMultiset& fac, const std::vector<long long>& point);
/// Exact evaluation of the defining product at an integer point.
__int128 evaluate_direct(const ZnFunction& f, const std::vector<long long>& point);

std::vector<std::vector<long long>> factors_to_rows(const FactorMultiset& fac);
FactorMultiset factors_from_rows(std::size_t n, const std::vector<std::vector<long long>>& rows);

}  // namespace apport

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "apport/cmatrix.hpp"

namespace apport {

/// Undirected graph on vertices {0..n-1} allowing loops but not multi-edges.
class LoopGraph {
public:
    explicit LoopGraph(std::size_t n) : n_(n) {}

    std::size_t n() const { return n_; }
    const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    /// Adds {i, j}; loops allowed. Duplicate edges are rejected.
    void add_edge(std::size_t i, std::size_t j);
    bool has_edge(std::size_t i, std::size_t j) const;

    std::size_t edge_count() const { return edges_.size(); }
    std::size_t loop_count() const;

    /// Symmetric 0/1 adjacency matrix; diagonal marks loops.
    CMatrix adjacency() const;

    bool operator==(const LoopGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    std::size_t n_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;  // stored with first <= second
};

/// A function f: Z_n -> Z_n stored as a value table.
class ZnFunction {
public:
    explicit ZnFunction(std::vector<std::size_t> table);

    std::size_t n() const { return table_.size(); }
    std::size_t operator()(std::size_t i) const { return table_.at(i); }
    const std::vector<std::size_t>& table() const { return table_; }

    /// f(i) <= i for all i
    bool non_increasing() const;
    /// f(0) = 0 and f(i) < i for i != 0
    bool contracting() const;

    bool operator==(const ZnFunction& o) const { return table_ == o.table_; }

private:
    std::vector<std::size_t> table_;
};

/// min{|i-j|, n-|i-j|}, the edge length in the complete loop-graph on n vertices.
std::size_t edge_length(std::size_t i, std::size_t j, std::size_t n);

/// True iff the labels, taken in the complete loop-graph on 2m-1 vertices,
/// induce each edge length 0..m-1 exactly once (m = number of edges of g).
/// labels[v] is the label of vertex v and must be injective into {0..2m-2}.
bool is_rho_labeling(const LoopGraph& g, const std::vector<std::size_t>& labels);

/// Identity-labeling gracefulness: g must have n vertices, n-1 non-loop edges
/// and one loop, and the identity map must be a rho-labeling (its image is
/// Z_n by construction).
bool is_graceful(const LoopGraph& g);

/// Bijection from non-increasing functions to gracefully labelled
/// loop-graphs: edges {f(i)+n-1-i, f(i)} for i < n-1 plus loop at f(n-1).
LoopGraph nif_to_loopgraph(const ZnFunction& f);
/// Inverse of nif_to_loopgraph; rejects graphs that are not gracefully labelled.
ZnFunction loopgraph_to_nif(const LoopGraph& g);

struct FunctionalGraphs {
    std::vector<std::pair<std::size_t, std::size_t>> arcs;  // (i, f(i))
    LoopGraph underlying;                                   // G_f
};
FunctionalGraphs underlying_graphs(const ZnFunction& f);

/// True iff the cyclic orbit of a symmetric 0/1 matrix of size 2n-1 tiles
/// the all-ones matrix exactly (integer arithmetic).
bool cyclic_decomposition_check(const CMatrix& a, std::size_t n);

/// One local composition step: g = f.f on the preimage block of f(n-1),
/// g = f elsewhere. Preconditions are validated (see exceptions' messages).
ZnFunction compose_step(const ZnFunction& f);

/// Repeated composition steps, inserting a canonical breadth-first
/// relabeling between steps, until the identically zero function is reached.
/// Returns the number of composition steps taken.
std::size_t compose_iterate(ZnFunction& f, std::size_t max_steps = 10000);

/// max over all permutations of |{ |pi f pi^{-1}(i) - i| : i in Z_n }|,
/// by exhaustive enumeration; n <= 8.
std::size_t max_induced_labels(const ZnFunction& f);

/// All contracting functions on Z_n in lexicographic table order.
std::vector<ZnFunction> enumerate_contracting(std::size_t n);
/// All non-increasing functions on Z_n in lexicographic table order.
std::vector<ZnFunction> enumerate_non_increasing(std::size_t n);

}  // namespace apport

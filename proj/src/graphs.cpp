#include "apport/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace apport {

void LoopGraph::add_edge(std::size_t i, std::size_t j) {
    if (i >= n_ || j >= n_) throw std::invalid_argument("LoopGraph: endpoint out of range");
    auto e = std::minmax(i, j);
    if (!edges_.insert({e.first, e.second}).second)
        throw std::invalid_argument("LoopGraph: duplicate edge");
}

bool LoopGraph::has_edge(std::size_t i, std::size_t j) const {
    auto e = std::minmax(i, j);
    return edges_.count({e.first, e.second}) > 0;
}

std::size_t LoopGraph::loop_count() const {
    std::size_t c = 0;
    for (const auto& e : edges_)
        if (e.first == e.second) ++c;
    return c;
}

CMatrix LoopGraph::adjacency() const {
    CMatrix a(n_);
    for (const auto& e : edges_) {
        a(e.first, e.second) = 1.0;
        a(e.second, e.first) = 1.0;
    }
    return a;
}

ZnFunction::ZnFunction(std::vector<std::size_t> table) : table_(std::move(table)) {
    if (table_.empty()) throw std::invalid_argument("ZnFunction: empty table");
    for (std::size_t v : table_)
        if (v >= table_.size()) throw std::invalid_argument("ZnFunction: value out of range");
}

bool ZnFunction::non_increasing() const {
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (table_[i] > i) return false;
    return true;
}

bool ZnFunction::contracting() const {
    if (table_[0] != 0) return false;
    for (std::size_t i = 1; i < table_.size(); ++i)
        if (table_[i] >= i) return false;
    return true;
}

std::size_t edge_length(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= n || j >= n) throw std::invalid_argument("edge_length: vertex out of range");
    const std::size_t d = (i > j) ? i - j : j - i;
    return std::min(d, n - d);
}

bool is_rho_labeling(const LoopGraph& g, const std::vector<std::size_t>& labels) {
    const std::size_t m = g.edge_count();
    if (m == 0) throw std::invalid_argument("is_rho_labeling: graph has no edges");
    if (labels.size() != g.n()) throw std::invalid_argument("is_rho_labeling: label table size");
    std::set<std::size_t> seen;
    for (std::size_t v : labels) {
        if (v > 2 * m - 2) throw std::invalid_argument("is_rho_labeling: label out of range");
        if (!seen.insert(v).second) throw std::invalid_argument("is_rho_labeling: labels not injective");
    }
    // lengths are measured in the complete loop-graph on 2m-1 vertices
    std::vector<std::size_t> count(m, 0);
    for (const auto& e : g.edges()) {
        const std::size_t len = edge_length(labels[e.first], labels[e.second], 2 * m - 1);
        if (len >= m) return false;
        ++count[len];
    }
    for (std::size_t len = 0; len < m; ++len)
        if (count[len] != 1) return false;
    return true;
}

bool is_graceful(const LoopGraph& g) {
    const std::size_t n = g.n();
    if (g.edge_count() != n || g.loop_count() != 1)
        throw std::domain_error("is_graceful: need n-1 non-loop edges and one loop");
    std::vector<std::size_t> ident(n);
    for (std::size_t i = 0; i < n; ++i) ident[i] = i;
    return is_rho_labeling(g, ident);
}

LoopGraph nif_to_loopgraph(const ZnFunction& f) {
    if (!f.non_increasing()) throw std::domain_error("nif_to_loopgraph: function not non-increasing");
    const std::size_t n = f.n();
    LoopGraph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(f(i) + n - 1 - i, f(i));
    g.add_edge(f(n - 1), f(n - 1));
    return g;
}

ZnFunction loopgraph_to_nif(const LoopGraph& g) {
    const std::size_t n = g.n();
    if (!is_graceful(g)) throw std::domain_error("loopgraph_to_nif: graph not gracefully labelled");
    std::vector<std::size_t> table(n, 0);
    for (const auto& e : g.edges()) {
        const std::size_t len = e.second - e.first;  // stored with first <= second
        if (len == 0)
            table[n - 1] = e.first;
        else
            table[n - 1 - len] = e.first;
    }
    return ZnFunction(table);
}

FunctionalGraphs underlying_graphs(const ZnFunction& f) {
    const std::size_t n = f.n();
    FunctionalGraphs out{{}, LoopGraph(n)};
    for (std::size_t i = 0; i < n; ++i) {
        out.arcs.emplace_back(i, f(i));
        if (!out.underlying.has_edge(i, f(i))) out.underlying.add_edge(i, f(i));
    }
    return out;
}

bool cyclic_decomposition_check(const CMatrix& a, std::size_t n) {
    const std::size_t size = 2 * n - 1;
    if (a.n() != size) throw std::invalid_argument("cyclic_decomposition_check: size must be 2n-1");
    std::vector<std::vector<int>> b(size, std::vector<int>(size, 0));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const cd z = a(i, j);
            const int v = static_cast<int>(std::lround(z.real()));
            if (std::abs(z.imag()) > 0.0 || (v != 0 && v != 1) ||
                std::abs(z.real() - static_cast<double>(v)) > 0.0)
                throw std::invalid_argument("cyclic_decomposition_check: entries must be exactly 0/1");
            b[i][j] = v;
        }
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            if (b[i][j] != b[j][i])
                throw std::invalid_argument("cyclic_decomposition_check: matrix not symmetric");
    // sum of all cyclic conjugates hits (s,t) once per 1 on the (t-s) diagonal
    for (std::size_t s = 0; s < size; ++s)
        for (std::size_t t = 0; t < size; ++t) {
            int total = 0;
            for (std::size_t k = 0; k < size; ++k) total += b[(s + k) % size][(t + k) % size];
            if (total != 1) return false;
        }
    return true;
}

namespace {

// parent-pointer view of the loop-tree of a contracting function,
// plus BFS distances from vertex 0 in G_f
std::vector<std::size_t> bfs_distances_from_zero(const ZnFunction& f) {
    const std::size_t n = f.n();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 1; i < n; ++i) {
        adj[i].push_back(f(i));
        adj[f(i)].push_back(i);
    }
    std::vector<std::size_t> dist(n, static_cast<std::size_t>(-1));
    std::deque<std::size_t> q{0};
    dist[0] = 0;
    while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop_front();
        for (std::size_t w : adj[v])
            if (dist[w] == static_cast<std::size_t>(-1)) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

}  // namespace

ZnFunction compose_step(const ZnFunction& f) {
    const std::size_t n = f.n();
    if (!f.contracting()) throw std::domain_error("compose_step: function not contracting");

    const std::size_t target = f(n - 1);
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < n; ++i)
        if (f(i) == target) block.push_back(i);
    // block must be {n-k, ..., n-1}
    for (std::size_t k = 0; k < block.size(); ++k)
        if (block[block.size() - 1 - k] != n - 1 - k)
            throw std::domain_error(
                "compose_step: preimage of f(n-1) is not a consecutive run ending at n-1");

    // vertex n-1 must be a farthest vertex from 0 in the loop-tree G_f
    const std::vector<std::size_t> dist = bfs_distances_from_zero(f);
    std::size_t ecc = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] == static_cast<std::size_t>(-1))
            throw std::domain_error("compose_step: G_f is not connected");
        ecc = std::max(ecc, dist[v]);
    }
    if (dist[n - 1] != ecc)
        throw std::domain_error("compose_step: 0-to-(n-1) path does not realize the diameter");

    std::vector<std::size_t> g = f.table();
    for (std::size_t i : block) g[i] = f(f(i));
    return ZnFunction(std::move(g));
}

namespace {

// Breadth-first canonical relabeling of the loop-tree of a contracting f:
// vertices sorted by (depth, parent's new label, old label). The result is
// contracting, n-1 lands on a deepest vertex, and the siblings of n-1 form
// the tail block of the deepest layer.
ZnFunction canonical_relabel(const ZnFunction& f) {
    const std::size_t n = f.n();
    const std::vector<std::size_t> dist = bfs_distances_from_zero(f);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    std::vector<std::size_t> new_label(n, 0);
    std::size_t next = 0;
    std::size_t depth = 0;
    std::vector<std::size_t> layer;
    for (;;) {
        layer.clear();
        for (std::size_t v = 0; v < n; ++v)
            if (dist[v] == depth) layer.push_back(v);
        if (layer.empty()) break;
        std::sort(layer.begin(), layer.end(), [&](std::size_t a, std::size_t b) {
            const std::size_t pa = (depth == 0) ? 0 : new_label[f(a)];
            const std::size_t pb = (depth == 0) ? 0 : new_label[f(b)];
            if (pa != pb) return pa < pb;
            return a < b;
        });
        for (std::size_t v : layer) new_label[v] = next++;
        ++depth;
    }

    std::vector<std::size_t> table(n, 0);
    for (std::size_t v = 0; v < n; ++v) table[new_label[v]] = new_label[f(v)];
    return ZnFunction(std::move(table));
}

bool is_zero_function(const ZnFunction& f) {
    for (std::size_t v : f.table())
        if (v != 0) return false;
    return true;
}

}  // namespace

std::size_t compose_iterate(ZnFunction& f, std::size_t max_steps) {
    if (!f.contracting()) throw std::domain_error("compose_iterate: function not contracting");
    std::size_t steps = 0;
    while (!is_zero_function(f)) {
        if (steps >= max_steps) throw std::runtime_error("compose_iterate: step limit exceeded");
        f = canonical_relabel(f);
        f = compose_step(f);
        ++steps;
    }
    return steps;
}

std::size_t max_induced_labels(const ZnFunction& f) {
    const std::size_t n = f.n();
    if (n > 8) throw std::invalid_argument("max_induced_labels: supported only for n <= 8");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::size_t> inv(n);
    std::size_t best = 0;
    do {
        for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;
        bool seen[8] = {};
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t gi = perm[f(inv[i])];
            const std::size_t d = (gi > i) ? gi - i : i - gi;
            if (!seen[d]) {
                seen[d] = true;
                ++count;
            }
        }
        best = std::max(best, count);
        if (best == n) return best;  // cannot do better
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

void enumerate_rec(std::size_t n, std::size_t i, bool strict, std::vector<std::size_t>& cur,
                   std::vector<ZnFunction>& out) {
    if (i == n) {
        out.emplace_back(cur);
        return;
    }
    const std::size_t hi = strict ? std::max<std::size_t>(i, 1) : i + 1;
    for (std::size_t v = 0; v < hi; ++v) {
        cur[i] = v;
        enumerate_rec(n, i + 1, strict, cur, out);
    }
}

}  // namespace

std::vector<ZnFunction> enumerate_contracting(std::size_t n) {
    std::vector<ZnFunction> out;
    std::vector<std::size_t> cur(n, 0);
    enumerate_rec(n, 1, true, cur, out);
    return out;
}

std::vector<ZnFunction> enumerate_non_increasing(std::size_t n) {
    std::vector<ZnFunction> out;
    std::vector<std::size_t> cur(n, 0);
    enumerate_rec(n, 0, false, cur, out);
    return out;
}

}  // namespace apport

#include "apport/recovery.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace apport {

LinearForm LinearForm::canonical(std::vector<long long> c) {
    return canonical_signed(std::move(c)).first;
}

std::pair<LinearForm, int> LinearForm::canonical_signed(std::vector<long long> c) {
    int sign = 1;
    for (long long v : c) {
        if (v > 0) break;
        if (v < 0) {
            for (long long& w : c) w = -w;
            sign = -1;
            break;
        }
    }
    return {LinearForm{std::move(c)}, sign};
}

bool LinearForm::is_zero() const {
    for (long long v : coeffs)
        if (v != 0) return false;
    return true;
}

FormClass classify(const LinearForm& f) {
    std::vector<long long> nz;
    for (long long v : f.coeffs)
        if (v != 0) nz.push_back(v);
    if (nz.empty()) return FormClass::zero;
    std::vector<long long> sorted = nz;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == std::vector<long long>{-1, 1}) return FormClass::binomial;
    if (sorted == std::vector<long long>{-1, -1, 2} || sorted == std::vector<long long>{-2, 1, 1})
        return FormClass::trinomial;
    if (sorted == std::vector<long long>{-1, -1, 1, 1}) return FormClass::quadrinomial;
    return FormClass::other;
}

long long FactorMultiset::total() const {
    long long t = 0;
    for (const auto& [form, mult] : counts) t += mult;
    return t;
}

bool FactorMultiset::has_zero_form() const {
    for (const auto& [form, mult] : counts)
        if (form.is_zero()) return true;
    return false;
}

FactorMultiset edge_labeling_factors(const ZnFunction& f) {
    const std::size_t n = f.n();
    FactorMultiset fac;
    fac.n = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (int sign : {+1, -1}) {
                // (x_f(j) - x_j) + sign*(x_f(i) - x_i)
                std::vector<long long> c(n, 0);
                c[f(j)] += 1;
                c[j] -= 1;
                c[f(i)] += sign;
                c[i] -= sign;
                auto [form, flip] = LinearForm::canonical_signed(std::move(c));
                fac.sign *= flip;
                ++fac.counts[std::move(form)];
            }
    return fac;
}

bool pf_nonzero(const ZnFunction& f) {
    const std::size_t n = f.n();
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (f(i) == i) ++fixed;
    if (fixed > 1) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (f(i) != i && f(f(i)) == i) return false;
    return true;
}

namespace {

// positions of the dominant (+-2) coefficient and the two opposite +-1s
struct TrinomialParts {
    std::size_t r, s, t;
};

TrinomialParts split_trinomial(const LinearForm& f) {
    TrinomialParts p{0, 0, 0};
    bool have_s = false;
    for (std::size_t v = 0; v < f.coeffs.size(); ++v) {
        const long long c = f.coeffs[v];
        if (c == 2 || c == -2) {
            p.r = v;
        } else if (c != 0) {
            if (!have_s) {
                p.s = v;
                have_s = true;
            } else {
                p.t = v;
            }
        }
    }
    return p;
}

LinearForm binomial_of(std::size_t n, std::size_t s, std::size_t t) {
    std::vector<long long> c(n, 0);
    c[std::min(s, t)] = 1;
    c[std::max(s, t)] = -1;
    return LinearForm{std::move(c)};
}

}  // namespace

RecoveredGraph recover_graph(const FactorMultiset& fac) {
    if (fac.has_zero_form())
        throw std::domain_error("recover_graph: polynomial is identically zero");

    std::map<LinearForm, long long> rest = fac.counts;
    std::deque<LinearForm> trinomials;
    for (const auto& [form, mult] : fac.counts) {
        switch (classify(form)) {
            case FormClass::binomial:
            case FormClass::quadrinomial:
                break;
            case FormClass::trinomial:
                for (long long k = 0; k < mult; ++k) trinomials.push_back(form);
                break;
            default:
                throw std::runtime_error("recover_graph: unrecognized factor shape");
        }
    }

    // each trinomial +-(2r - s - t) consumes one copy of its binomial (s - t)
    for (const LinearForm& tri : trinomials) {
        const TrinomialParts p = split_trinomial(tri);
        const LinearForm key = binomial_of(fac.n, p.s, p.t);
        auto it = rest.find(key);
        if (it == rest.end() || it->second <= 0)
            throw std::runtime_error("recover_graph: unpairable trinomial");
        if (--it->second == 0) rest.erase(it);
    }

    RecoveredGraph out{false, LoopGraph(fac.n)};
    for (const auto& [form, mult] : rest) {
        if (classify(form) != FormClass::binomial) continue;
        if (mult % 2 != 0)
            throw std::runtime_error("recover_graph: leftover binomial with odd multiplicity");
        out.has_fixed_point = true;
        std::size_t k = 0, l = 0;
        for (std::size_t v = 0; v < form.coeffs.size(); ++v) {
            if (form.coeffs[v] == 1) k = v;
            if (form.coeffs[v] == -1) l = v;
        }
        out.graph.add_edge(k, l);
    }
    return out;
}

ZnFunction recover_function(const LoopGraph& g, std::size_t fixed_point) {
    const std::size_t n = g.n();
    if (fixed_point >= n) throw std::domain_error("recover_function: fixed point out of range");
    if (g.loop_count() != 0 || g.edge_count() != n - 1)
        throw std::domain_error("recover_function: need exactly n-1 non-loop edges");

    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges()) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    std::vector<std::size_t> table(n, n);
    table[fixed_point] = fixed_point;
    std::deque<std::size_t> q{fixed_point};
    std::size_t visited = 1;
    while (!q.empty()) {
        const std::size_t x = q.front();
        q.pop_front();
        for (std::size_t v : adj[x])
            if (table[v] == n) {
                table[v] = x;  // orient toward the visited set
                ++visited;
                q.push_back(v);
            }
    }
    if (visited != n) throw std::domain_error("recover_function: graph not connected");
    return ZnFunction(std::move(table));
}

__int128 evaluate_factors(const FactorMultiset& fac, const std::vector<long long>& point) {
    if (point.size() != fac.n) throw std::invalid_argument("evaluate_factors: point size");
    __int128 prod = fac.sign;
    for (const auto& [form, mult] : fac.counts)
        for (long long k = 0; k < mult; ++k) {
            __int128 v = 0;
            for (std::size_t i = 0; i < fac.n; ++i)
                v += static_cast<__int128>(form.coeffs[i]) * point[i];
            prod *= v;
        }
    return prod;
}

__int128 evaluate_direct(const ZnFunction& f, const std::vector<long long>& point) {
    const std::size_t n = f.n();
    if (point.size() != n) throw std::invalid_argument("evaluate_direct: point size");
    __int128 prod = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const __int128 dj = static_cast<__int128>(point[f(j)]) - point[j];
            const __int128 di = static_cast<__int128>(point[f(i)]) - point[i];
            prod *= dj * dj - di * di;
        }
    return prod;
}

std::vector<std::vector<long long>> factors_to_rows(const FactorMultiset& fac) {
    std::vector<std::vector<long long>> rows;
    for (const auto& [form, mult] : fac.counts)
        for (long long k = 0; k < mult; ++k) rows.push_back(form.coeffs);
    return rows;
}

FactorMultiset factors_from_rows(std::size_t n, const std::vector<std::vector<long long>>& rows) {
    FactorMultiset fac;
    fac.n = n;
    for (const auto& row : rows) {
        if (row.size() != n) throw std::invalid_argument("factor row has wrong length");
        auto [form, flip] = LinearForm::canonical_signed(row);
        fac.sign *= flip;
        ++fac.counts[std::move(form)];
    }
    return fac;
}

}  // namespace apport

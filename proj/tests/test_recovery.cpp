#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apport/io.hpp"
#include "apport/recovery.hpp"
#include "apport/rng.hpp"

using namespace apport;

namespace {

long long count_of(const FactorMultiset& fac, const std::vector<long long>& coeffs) {
    const auto it = fac.counts.find(LinearForm::canonical(coeffs));
    return it == fac.counts.end() ? 0 : it->second;
}

ZnFunction random_function(std::size_t n, Rng& rng) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = rng.next_below(n);
    return ZnFunction(std::move(t));
}

}  // namespace

TEST_CASE("edge_labeling_factors of the four-vertex path") {
    const ZnFunction f({0, 0, 1, 2});
    const FactorMultiset fac = edge_labeling_factors(f);
    CHECK(fac.total() == 12);  // n(n-1)
    CHECK_FALSE(fac.has_zero_form());

    // squared consecutive differences from the fixed-point pairs
    CHECK(count_of(fac, {1, -1, 0, 0}) == 2);
    CHECK(count_of(fac, {0, 1, -1, 0}) == 2);
    CHECK(count_of(fac, {0, 0, 1, -1}) == 2);
    // binomial-trinomial pairs
    CHECK(count_of(fac, {1, 0, -1, 0}) == 1);
    CHECK(count_of(fac, {1, -2, 1, 0}) == 1);
    CHECK(count_of(fac, {0, 1, 0, -1}) == 1);
    CHECK(count_of(fac, {0, 1, -2, 1}) == 1);
}

TEST_CASE("two fixed points force the zero polynomial") {
    const FactorMultiset fac = edge_labeling_factors(ZnFunction({0, 1}));
    CHECK(fac.has_zero_form());
    CHECK_THROWS_AS((void)recover_graph(fac), std::domain_error);
}

TEST_CASE("the constant-zero function on three points") {
    const FactorMultiset fac = edge_labeling_factors(ZnFunction({0, 0, 0}));
    CHECK(fac.total() == 6);
    CHECK(count_of(fac, {1, -1, 0}) == 2);
    CHECK(count_of(fac, {1, 0, -1}) == 2);
    CHECK(count_of(fac, {0, 1, -1}) == 1);
    CHECK(count_of(fac, {2, -1, -1}) == 1);
    Rng rng(500);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<long long> point(3);
        for (long long& v : point) v = static_cast<long long>(rng.next_below(7)) - 3;
        CHECK(evaluate_factors(fac, point) == evaluate_direct(ZnFunction({0, 0, 0}), point));
    }
}

TEST_CASE("factored and direct evaluation agree on random integer points") {
    Rng rng(501);
    for (std::size_t n : {3, 4, 5}) {
        for (int fn = 0; fn < 4; ++fn) {
            const ZnFunction f = random_function(n, rng);
            const FactorMultiset fac = edge_labeling_factors(f);
            for (int rep = 0; rep < 20; ++rep) {
                std::vector<long long> point(n);
                for (long long& v : point) v = static_cast<long long>(rng.next_below(7)) - 3;
                CHECK(evaluate_factors(fac, point) == evaluate_direct(f, point));
            }
        }
    }
}

TEST_CASE("pf_nonzero") {
    CHECK_FALSE(pf_nonzero(ZnFunction({0, 1})));      // two fixed points
    CHECK_FALSE(pf_nonzero(ZnFunction({1, 0})));      // a 2-cycle
    CHECK(pf_nonzero(ZnFunction({1, 2, 0})));         // 3-cycle, no fixed point
    for (std::size_t n = 2; n <= 6; ++n)
        for (const ZnFunction& f : enumerate_contracting(n)) CHECK(pf_nonzero(f));
}

TEST_CASE("recover_graph on the worked example") {
    const FactorMultiset fac = edge_labeling_factors(ZnFunction({0, 0, 1, 2}));
    const RecoveredGraph rec = recover_graph(fac);
    CHECK(rec.has_fixed_point);
    CHECK(rec.graph.edge_count() == 3);
    CHECK(rec.graph.has_edge(0, 1));
    CHECK(rec.graph.has_edge(1, 2));
    CHECK(rec.graph.has_edge(2, 3));
    CHECK(rec.graph.loop_count() == 0);
}

TEST_CASE("recover_graph identifies the star and fixed-point-free functions") {
    const RecoveredGraph star = recover_graph(edge_labeling_factors(ZnFunction({0, 0, 0, 0})));
    CHECK(star.has_fixed_point);
    CHECK(star.graph.has_edge(0, 1));
    CHECK(star.graph.has_edge(0, 2));
    CHECK(star.graph.has_edge(0, 3));

    const RecoveredGraph cyc = recover_graph(edge_labeling_factors(ZnFunction({1, 2, 0})));
    CHECK_FALSE(cyc.has_fixed_point);
    CHECK(cyc.graph.edge_count() == 0);
}

TEST_CASE("recover_function") {
    LoopGraph p4(4);
    p4.add_edge(0, 1);
    p4.add_edge(1, 2);
    p4.add_edge(2, 3);
    CHECK(recover_function(p4, 0) == ZnFunction({0, 0, 1, 2}));

    LoopGraph star(4);
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    CHECK(recover_function(star, 0) == ZnFunction({0, 0, 0, 0}));

    LoopGraph disconnected(4);
    disconnected.add_edge(0, 1);
    disconnected.add_edge(2, 3);
    CHECK_THROWS_AS((void)recover_function(disconnected, 0), std::domain_error);

    LoopGraph wrong(3);
    wrong.add_edge(0, 1);
    CHECK_THROWS_AS((void)recover_function(wrong, 0), std::domain_error);
}

TEST_CASE("round trip over all contracting functions up to n = 6") {
    for (std::size_t n = 2; n <= 6; ++n) {
        for (const ZnFunction& f : enumerate_contracting(n)) {
            const RecoveredGraph rec = recover_graph(edge_labeling_factors(f));
            REQUIRE(rec.has_fixed_point);
            CHECK(rec.graph.loop_count() == 0);
            CHECK(recover_function(rec.graph, 0) == f);
        }
    }
}

TEST_CASE("factor rows survive the file format") {
    const ZnFunction f({0, 0, 1});
    const FactorMultiset fac = edge_labeling_factors(f);
    const std::string text = factors_to_string(factors_to_rows(fac));
    const FactorMultiset back = factors_from_rows(3, factors_from_string(text + "# comment\n"));
    CHECK(back.counts == fac.counts);
}

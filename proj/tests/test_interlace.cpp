#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apport/interlace.hpp"
#include "apport/linalg.hpp"
#include "apport/rng.hpp"
#include "helpers.hpp"

using namespace apport;

namespace {

LoopGraph example_path_graph() {
    // path 3,0,2,1 with a loop at 2; gracefully labelled
    LoopGraph g(4);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    g.add_edge(1, 2);
    g.add_edge(2, 2);
    return g;
}

// sign patterns of the four masked matrices for the example graph
const int kPattern[4][4][4] = {
    {{1, 1, 0, 0}, {1, 1, 0, 1}, {0, 0, -1, 1}, {0, 1, 1, 1}},
    {{1, 0, 1, 1}, {0, -1, 1, 0}, {1, 1, 1, 0}, {1, 0, 0, 1}},
    {{-1, 1, 0, 0}, {1, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}},
    {{1, 0, 1, 1}, {0, 1, 1, 0}, {1, 1, 1, 0}, {1, 0, 0, -1}},
};

LoopGraph random_graceful(std::size_t n, Rng& rng) {
    std::vector<std::size_t> table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = rng.next_below(i + 1);  // f(i) <= i
    return nif_to_loopgraph(ZnFunction(std::move(table)));
}

}  // namespace

TEST_CASE("mask family reproduces the worked four-vertex example") {
    Rng rng(401);
    const CMatrix m = testutil::random_hermitian(4, rng);
    const MaskFamily fam = mask_family(m, example_path_graph());
    REQUIRE(fam.members.size() == 4);
    for (int k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                const cd want = static_cast<double>(kPattern[k][i][j]) * m(i, j);
                CHECK(std::abs(fam.members[k](i, j) - want) < 1e-14);
            }

    // the same patterns applied to the all-ones matrix
    const MaskFamily fj = mask_family(ones(4), example_path_graph());
    for (int k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(std::abs(fj.members[k](i, j) - cd(kPattern[k][i][j], 0)) < 1e-14);
}

TEST_CASE("mask family edge cases") {
    const MaskFamily fz = mask_family(zeros(4), example_path_graph());
    for (const CMatrix& mk : fz.members) CHECK(max_abs(mk) == 0.0);
    for (double t : fz.thetas) CHECK(t == 0.0);

    Rng rng(402);
    const CMatrix m = testutil::random_hermitian(5, rng);
    const MaskFamily fam = mask_family(m, random_graceful(5, rng));
    for (const CMatrix& mk : fam.members) CHECK(max_abs_diff(mk, adjoint(mk)) < 1e-12);
    for (std::size_t j = 1; j < fam.thetas.size(); ++j)
        CHECK(fam.thetas[j - 1] >= fam.thetas[j]);

    CHECK_THROWS_AS((void)mask_family(testutil::random_matrix(4, rng), example_path_graph()),
                    std::domain_error);
    LoopGraph bad(4);
    bad.add_edge(0, 0);
    bad.add_edge(0, 1);
    bad.add_edge(1, 2);
    bad.add_edge(2, 3);
    CHECK_THROWS_AS((void)mask_family(zeros(4), bad), std::domain_error);
}

TEST_CASE("sum identity") {
    const MaskFamily fj = mask_family(ones(4), example_path_graph());
    CHECK(check_sum_identity(fj) == doctest::Approx(0.0));
    CMatrix sum(4);
    for (const CMatrix& mk : fj.members) sum += mk;
    CHECK(max_abs_diff(sum, cd(2, 0) * ones(4)) < 1e-14);

    const MaskFamily fi = mask_family(identity(4), example_path_graph());
    CMatrix sumi(4);
    for (const CMatrix& mk : fi.members) sumi += mk;
    CHECK(max_abs_diff(sumi, cd(2, 0) * identity(4)) < 1e-14);

    Rng rng(403);
    for (int rep = 0; rep < 5; ++rep) {
        const CMatrix m = testutil::random_hermitian(5, rng);
        CHECK(check_sum_identity(mask_family(m, random_graceful(5, rng))) < 1e-12);
    }

    const MaskFamily f3 = mask_family(testutil::random_hermitian(3, rng),
                                      nif_to_loopgraph(ZnFunction({0, 0, 0})));
    CHECK_THROWS_AS((void)check_sum_identity(f3), std::domain_error);
}

TEST_CASE("interlacing bounds on fixed inputs") {
    const MaskFamily fz = mask_family(zeros(4), example_path_graph());
    for (const InterlaceRow& r : interlacing_bounds(fz)) {
        CHECK(r.pass);
        CHECK(r.lambda == 0.0);
    }

    const MaskFamily fj = mask_family(ones(4), example_path_graph());
    const std::vector<InterlaceRow> rows = interlacing_bounds(fj);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].lambda == doctest::Approx(4.0));
    for (const InterlaceRow& r : rows) CHECK(r.pass);
}

TEST_CASE("interlacing bounds hold over random Hermitian instances") {
    Rng rng(404);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 4 + rng.next_below(5);
        const CMatrix m = testutil::random_hermitian(n, rng);
        const MaskFamily fam = mask_family(m, random_graceful(n, rng));
        for (const InterlaceRow& r : interlacing_bounds(fam)) CHECK(r.pass);
    }
}

TEST_CASE("trace consistency of the theta multiset") {
    Rng rng(405);
    const std::size_t n = 6;
    const CMatrix m = testutil::random_hermitian(n, rng);
    const MaskFamily fam = mask_family(m, random_graceful(n, rng));
    double theta_sum = 0.0;
    for (double t : fam.thetas) theta_sum += t;
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += m(i, i).real();
    CHECK(std::abs(theta_sum - (static_cast<double>(n) - 2.0) * tr) < 1e-9);
}

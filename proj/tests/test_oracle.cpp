#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "capath/extremal.hpp"
#include "capath/oracle.hpp"
#include "reference.hpp"

using namespace capath;

TEST_CASE("monochromatic triangle") {
    EdgeColoring tri = build_coloring(3, 2, {1, 1, 1});
    CHECK(longest_avoiding_path(tri, 1).order == 1);
    auto r = longest_avoiding_path(tri, 2);
    CHECK(r.order == 3);
    CHECK(validate_witness(tri, {2, r.vertices}, 3));
}

TEST_CASE("search result always realizes its order") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const int t = 1 + static_cast<int>(rng() % 3);
        EdgeColoring c = random_coloring(n, t, rng());
        for (Color avoided = 1; avoided <= t; ++avoided) {
            auto r = longest_avoiding_path(c, avoided);
            CHECK(static_cast<int>(r.vertices.size()) == r.order);
            CHECK(validate_witness(c, {avoided, r.vertices}, r.order));
            CHECK(r.order == testref::naive_longest(c, avoided));
        }
    }
}

TEST_CASE("extremal coloring for three 8s has no long avoiding path") {
    auto built = construct_extremal(TargetLengths({8, 8, 8}));
    for (Color j = 1; j <= 3; ++j) {
        const int longest = longest_avoiding_path(built.coloring, j).order;
        CHECK(longest <= 7);
        CHECK(longest == testref::naive_longest(built.coloring, j));
    }
}

TEST_CASE("relabeling vertices leaves the longest order unchanged") {
    std::mt19937_64 rng(37);
    for (int iter = 0; iter < 15; ++iter) {
        const int n = 5 + static_cast<int>(rng() % 5);
        EdgeColoring c = random_coloring(n, 3, rng());
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Color> edges(c.edge_count());
        for (int v = 1; v < n; ++v)
            for (int u = 0; u < v; ++u)
                edges[EdgeColoring::edge_index(perm[static_cast<std::size_t>(u)],
                                               perm[static_cast<std::size_t>(v)])] =
                    c.color(u, v);
        EdgeColoring shuffled = build_coloring(n, 3, std::move(edges));
        for (Color j = 1; j <= 3; ++j)
            CHECK(longest_avoiding_path(c, j).order == longest_avoiding_path(shuffled, j).order);
    }
}

TEST_CASE("avoiding a merged class is at most avoiding either preimage") {
    std::mt19937_64 rng(41);
    ColorMergeMap map = ColorMergeMap::merge_pair(3, 2, 3);
    for (int iter = 0; iter < 20; ++iter) {
        EdgeColoring c = random_coloring(8, 3, rng());
        EdgeColoring merged = merge_colors(c, map);
        const int both = longest_avoiding_path(merged, 2).order;
        CHECK(both <= longest_avoiding_path(c, 2).order);
        CHECK(both <= longest_avoiding_path(c, 3).order);
    }
}

TEST_CASE("early stop never changes the threshold decision") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = 4 + static_cast<int>(rng() % 6);
        EdgeColoring c = random_coloring(n, 2, rng());
        for (Color j = 1; j <= 2; ++j) {
            const int exact = longest_avoiding_path(c, j).order;
            for (int want = 2; want <= n; ++want) {
                auto quick = longest_avoiding_path(c, j, want);
                CHECK((quick.order >= want) == (exact >= want));
                CHECK(validate_witness(c, {j, quick.vertices}, quick.order));
            }
        }
    }
}

TEST_CASE("capability bound is an error, not a wrong answer") {
    EdgeColoring big = random_coloring(25, 2, 1);
    CHECK_THROWS_AS(longest_avoiding_path(big, 1), CapabilityError);
}

TEST_CASE("the walk-based fallback engine stays exact") {
    // 21 vertices exceed the table bound and route to the exhaustive walk
    EdgeColoring c = random_coloring(21, 6, 9);
    auto walked = longest_avoiding_path(c, 1, 12);
    CHECK(walked.order >= 12);
    CHECK(validate_witness(c, {1, walked.vertices}, walked.order));
}

TEST_CASE("lower witness checks pair targets with colors") {
    auto built = construct_extremal(TargetLengths({8, 8, 8}));
    CHECK(is_valid_lower_witness(built.coloring, TargetLengths({8, 8, 8})));
    CHECK_FALSE(is_valid_lower_witness(built.coloring, TargetLengths({8, 8, 7})));
    EdgeColoring k2 = build_coloring(2, 2, {1});
    CHECK_FALSE(is_valid_lower_witness(k2, TargetLengths({2, 2})));
    EdgeColoring mono5 = build_coloring(5, 2, std::vector<Color>(10, 1));
    CHECK_FALSE(is_valid_lower_witness(mono5, TargetLengths({4, 4})));
}

TEST_CASE("exhaustive search certifies the tiny values") {
    SUBCASE("two colors, both 4") {
        auto up = exhaustive_verify_upper(5, TargetLengths({4, 4}));
        CHECK(up.verdict == SearchVerdict::AllColoringsContainWitness);
        CHECK(up.colorings_examined == 1024);
        auto down = exhaustive_verify_upper(4, TargetLengths({4, 4}));
        CHECK(down.verdict == SearchVerdict::CounterexampleFound);
        REQUIRE(down.counterexample.has_value());
        CHECK(is_valid_lower_witness(*down.counterexample, TargetLengths({4, 4})));
    }
    SUBCASE("three colors, all 4") {
        auto up = exhaustive_verify_upper(4, TargetLengths({4, 4, 4}));
        CHECK(up.verdict == SearchVerdict::AllColoringsContainWitness);
        CHECK(up.colorings_examined == 729);
        auto down = exhaustive_verify_upper(3, TargetLengths({4, 4, 4}));
        CHECK(down.verdict == SearchVerdict::CounterexampleFound);
    }
}

TEST_CASE("chunked search agrees with the sequential one") {
    SearchOptions par;
    par.jobs = 4;
    auto a = exhaustive_verify_upper(5, TargetLengths({4, 4}), par);
    CHECK(a.verdict == SearchVerdict::AllColoringsContainWitness);
    CHECK(a.colorings_examined == 1024);
    auto b = exhaustive_verify_upper(4, TargetLengths({4, 4}), par);
    CHECK(b.verdict == SearchVerdict::CounterexampleFound);
}

TEST_CASE("color-symmetry pruning covers the same space") {
    SearchOptions pruned;
    pruned.prune_color_symmetry = true;
    auto r = exhaustive_verify_upper(5, TargetLengths({4, 4}), pruned);
    CHECK(r.verdict == SearchVerdict::AllColoringsContainWitness);
    CHECK(r.colorings_examined == 512);
    CHECK(r.colorings_covered == 1024);
    CHECK(r.pruned_color_symmetry);

    CHECK_THROWS_AS(exhaustive_verify_upper(4, TargetLengths({3, 4}), pruned),
                    std::invalid_argument);
}

TEST_CASE("budget overruns are capability errors") {
    SearchOptions tiny;
    tiny.budget = 100;
    CHECK_THROWS_AS(exhaustive_verify_upper(5, TargetLengths({4, 4}), tiny), CapabilityError);
}

TEST_CASE("random colorings are reproducible and roughly uniform") {
    CHECK(random_coloring(2, 1, 99).color(0, 1) == 1);
    CHECK(random_coloring(10, 3, 77) == random_coloring(10, 3, 77));
    CHECK_FALSE(random_coloring(10, 3, 77) == random_coloring(10, 3, 78));

    long long count[3] = {0, 0, 0};
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        EdgeColoring c = random_coloring(10, 3, seed);
        for (Color e : c.edge_colors()) ++count[e - 1];
    }
    // 45000 draws, expected 15000 each, sigma = sqrt(45000 * (1/3) * (2/3)) = 100
    for (int k = 0; k < 3; ++k) {
        CHECK(count[k] > 15000 - 500);
        CHECK(count[k] < 15000 + 500);
    }
}

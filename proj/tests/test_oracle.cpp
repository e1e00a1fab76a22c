#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "error.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace powham;

namespace {

Tournament transitive(int n) {
    Tournament t(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.set_edge(i, j);
    return t;
}

// independent oracle: permutations with a fixed starting vertex
bool brute_force_cycle(const Tournament &t, int k) {
    VertexSeq perm(t.n);
    for (int i = 0; i < t.n; ++i) perm[i] = i;
    do {
        if (verify_power_seq(t, perm, k, SeqKind::cycle)) return true;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return false;
}

} // namespace

TEST_CASE("search finds the transitive order") {
    Tournament t = transitive(9);
    for (int k : {1, 3, 8}) {
        SearchOutcome so = search_power_hamilton(t, k, SeqKind::path);
        REQUIRE(so.status == SearchStatus::found);
        CHECK(verify_power_seq(t, *so.witness, k, SeqKind::path));
    }
    CHECK(search_power_hamilton(t, 1, SeqKind::cycle).status == SearchStatus::exhausted_none);
}

TEST_CASE("search agrees with permutation brute force") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        Tournament t = random_tournament(7, seed);
        for (int k : {1, 2}) {
            bool exists = brute_force_cycle(t, k);
            SearchOutcome so = search_power_hamilton(t, k, SeqKind::cycle);
            REQUIRE(so.status != SearchStatus::budget_exceeded);
            CHECK((so.status == SearchStatus::found) == exists);
        }
    }
    // the quadratic-residue 7-tournament regression point
    Tournament qr = paley_tournament(7);
    bool exists = brute_force_cycle(qr, 2);
    SearchOutcome so = search_power_hamilton(qr, 2, SeqKind::cycle);
    CHECK((so.status == SearchStatus::found) == exists);
}

TEST_CASE("camion cross-check") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        int n = 4 + (int)(seed % 7);
        Tournament t = random_tournament(n, seed * 31 + 7);
        SearchOutcome so = search_power_hamilton(t, 1, SeqKind::cycle);
        REQUIRE(so.status != SearchStatus::budget_exceeded);
        CHECK((so.status == SearchStatus::found) == strongly_connected(t));
    }
}

TEST_CASE("found at k implies found below k") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        Tournament t = random_tournament(9, seed);
        SearchOutcome hi = search_power_hamilton(t, 2, SeqKind::cycle);
        if (hi.status == SearchStatus::found) {
            SearchOutcome lo = search_power_hamilton(t, 1, SeqKind::cycle);
            CHECK(lo.status == SearchStatus::found);
        }
    }
}

TEST_CASE("budget cut reports budget_exceeded, never exhausted") {
    Tournament t = random_tournament(24, 5);
    SearchOutcome so = search_power_hamilton(t, 3, SeqKind::cycle, SearchBudget::nodes(50));
    CHECK(so.status != SearchStatus::exhausted_none);
}

TEST_CASE("degenerate cycle sizes") {
    Tournament t = transitive(3);
    CHECK_THROWS_AS(search_power_hamilton(t, 3, SeqKind::cycle), Error);
}

TEST_CASE("find_transitive_set") {
    Tournament t = random_tournament(20, 3);
    VertexSeq one = find_transitive_set(t, 1);
    CHECK(one.size() == 1);

    Tournament cyc = build_tournament(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK_THROWS_AS(find_transitive_set(cyc, 3), Error);

    // every tournament on 4 vertices has a transitive 3-set (all 64 orientations)
    for (int mask = 0; mask < 64; ++mask) {
        Tournament t4(4);
        int bit = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j, ++bit) {
                if ((mask >> bit) & 1) t4.set_edge(i, j);
                else t4.set_edge(j, i);
            }
        VertexSeq s = find_transitive_set(t4, 3);
        CHECK(transitive_order(t4, s).has_value());
    }

    // guaranteed success at n >= 2^{k-1}
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Tournament big = random_tournament(16, seed);
        VertexSeq s = find_transitive_set(big, 5);
        CHECK(s.size() == 5);
        CHECK(transitive_order(big, s).has_value());
    }
}

TEST_CASE("transitive_fraction") {
    CHECK(transitive_fraction(transitive(10), 4).fraction == 1.0);
    Tournament cyc = build_tournament(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(transitive_fraction(cyc, 3).fraction == 0.0);

    for (uint64_t seed = 0; seed < 5; ++seed) {
        FractionEstimate fe = transitive_fraction(random_tournament(16, seed), 3);
        CHECK(fe.exact);
        CHECK(fe.fraction > 1.0 / 512.0);
    }
    CHECK_THROWS_AS(transitive_fraction_exact(random_tournament(40, 1), 10, 1000), Error);

    // sampling mode reports an interval around the exact value
    Tournament t = random_tournament(18, 9);
    FractionEstimate ex = transitive_fraction(t, 3);
    FractionEstimate sa = transitive_fraction(t, 3, /*exact_cap=*/10, /*samples=*/20000, 4);
    CHECK(!sa.exact);
    CHECK(sa.ci_low <= ex.fraction);
    CHECK(sa.ci_high >= ex.fraction);
}

TEST_CASE("find_long_power_path") {
    ParameterProfile p = ParameterProfile::desk(3);
    Tournament t = transitive(30);
    VertexSeq path = find_long_power_path(t, 3, p);
    CHECK((int)path.size() == 30); // the full linear order

    Tournament single(1);
    CHECK(find_long_power_path(single, 2, ParameterProfile::desk(2)).size() == 1);

    // k = 1 falls back to the insertion argument
    Tournament r = random_tournament(25, 2);
    CHECK(find_long_power_path(r, 1, ParameterProfile::desk(1)).size() == 25);

    // calibration: random 100-vertex, k=2 reaches length >= 13 on most seeds
    int hits = 0, floor_hits = 0;
    ParameterProfile p2 = ParameterProfile::desk(2);
    for (uint64_t seed = 0; seed < 20; ++seed) {
        p2.rng_seed = seed;
        VertexSeq q = find_long_power_path(random_tournament(100, seed), 2, p2);
        CHECK(verify_power_seq(random_tournament(100, seed), q, 2, SeqKind::path));
        if ((int)q.size() >= 13) ++hits;
        if ((int)q.size() >= p2.desk_floor) ++floor_hits;
    }
    CHECK(floor_hits == 20);
    CHECK(hits >= 18);
}

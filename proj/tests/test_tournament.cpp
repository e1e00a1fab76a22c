#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "error.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "tournament.hpp"

using namespace powham;

namespace {

Tournament transitive(int n) {
    Tournament t(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.set_edge(i, j);
    return t;
}

Tournament three_cycle() { return build_tournament(3, {{0, 1}, {1, 2}, {2, 0}}); }

} // namespace

TEST_CASE("build_tournament basics") {
    Tournament t = build_tournament(2, {{0, 1}});
    CHECK(t.edge(0, 1));
    CHECK(!t.edge(1, 0));
    CHECK_NOTHROW(t.validate());

    CHECK_NOTHROW(three_cycle().validate());

    CHECK_THROWS_AS(build_tournament(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}}), Error);
    try {
        build_tournament(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}});
    } catch (const Error &e) {
        CHECK(e.code() == Errc::conflicting_orientation);
    }
    CHECK_THROWS_AS(build_tournament(3, {{0, 1}}), Error);        // MissingPair
    CHECK_THROWS_AS(build_tournament(2, {{0, 0}, {0, 1}}), Error); // SelfLoop
    CHECK_THROWS_AS(build_tournament(2, {{0, 2}}), Error);         // OutOfRange
}

TEST_CASE("semidegree and defect") {
    CHECK(min_semidegree(three_cycle()) == 1);
    CHECK(min_semidegree(transitive(5)) == 0);

    // quadratic-residue tournament mod 7: residues {1,2,4}, so every vertex
    // has exactly 3 out- and 3 in-neighbors
    Tournament qr = paley_tournament(7);
    int residues = 0;
    for (int x = 1; x < 7; ++x) {
        bool is_res = false;
        for (int y = 1; y < 7; ++y)
            if (y * y % 7 == x) is_res = true;
        residues += is_res;
    }
    CHECK(residues == 3);
    CHECK(min_semidegree(qr) == 3);

    for (int n : {3, 7, 11, 63}) CHECK(regularity_defect(rotational_tournament(n)) == 0);
    CHECK(regularity_defect(transitive(5)) == 2);
}

TEST_CASE("out-degree sum invariant") {
    for (uint64_t seed : {1u, 2u, 3u}) {
        Tournament t = random_tournament(40, seed);
        long long sum = 0;
        for (int v = 0; v < t.n; ++v) sum += t.out_degree(v);
        CHECK(sum == 40LL * 39 / 2);
    }
}

TEST_CASE("common_neighbors") {
    Tournament t = transitive(3);
    Bits all = Bits::full(3);
    CHECK(common_neighbors(t, Bits::of(3, {0}), Direction::out, all) == t.out[0]);
    Bits c = common_neighbors(t, Bits::of(3, {0, 1}), Direction::out, all);
    CHECK(c.count() == 1);
    CHECK(c.test(2));
    Bits empty_out = common_neighbors(three_cycle(), Bits::full(3), Direction::out, Bits::full(3));
    CHECK(empty_out.none());
    CHECK_THROWS_AS(common_neighbors(t, Bits(3), Direction::in, all), Error);
}

TEST_CASE("verify_power_seq") {
    Tournament t = transitive(8);
    VertexSeq order{0, 1, 2, 3, 4, 5, 6, 7};
    for (int k = 1; k < 8; ++k) CHECK(verify_power_seq(t, order, k, SeqKind::path));
    CHECK(!verify_power_seq(t, order, 1, SeqKind::cycle)); // acyclic

    CHECK(verify_power_seq(three_cycle(), {0, 1, 2}, 1, SeqKind::cycle));
    CHECK_THROWS_AS(verify_power_seq(three_cycle(), {0, 1, 2}, 3, SeqKind::cycle), Error);

    // duplicate vertices are rejected
    CHECK(!verify_power_seq(t, {0, 0, 1}, 1, SeqKind::path));

    // monotone in k on a rotational tournament's natural order
    Tournament rot = rotational_tournament(11);
    VertexSeq nat{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(verify_power_seq(rot, nat, 5, SeqKind::path));
    for (int k = 1; k < 5; ++k) CHECK(verify_power_seq(rot, nat, k, SeqKind::path));
}

TEST_CASE("k=1 path check is the Hamilton path check") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Tournament t = random_tournament(9, seed);
        VertexSeq p = insertion_hamilton_path(t);
        CHECK(verify_power_seq(t, p, 1, SeqKind::path));
    }
}

TEST_CASE("transitive_order") {
    CHECK(transitive_order(transitive(6), {3, 1, 5}) == VertexSeq{1, 3, 5});
    CHECK(!transitive_order(three_cycle(), {0, 1, 2}).has_value());
}

TEST_CASE("is_head_tail") {
    ParameterProfile p = ParameterProfile::desk(2);
    Tournament t = transitive(10);
    Bits all = Bits::full(10);
    // the first k of a transitive tournament out-dominate all later vertices
    auto r = is_head_tail(t, {0, 1}, all, HeadTail::head, p);
    CHECK(r.ok);
    CHECK(r.witness.count() == 8);

    ParameterProfile p3 = ParameterProfile::desk(3);
    auto bad = is_head_tail(three_cycle(), {0, 1, 2}, Bits::full(3), HeadTail::head, p3);
    CHECK(!bad.ok); // transitivity fails regardless of neighborhoods

    // every Paley-7 vertex has 3 >= 7/64 out-neighbors
    ParameterProfile p1 = ParameterProfile::desk(1);
    p1.desk_floor = 1; // pure fraction threshold for this check
    Tournament qr = paley_tournament(7);
    auto single = is_head_tail(qr, {0}, Bits::full(7), HeadTail::head, p1);
    CHECK(single.ok);
    CHECK(single.witness.count() == 3);

    CHECK_THROWS_AS(is_head_tail(t, {0, 1, 2}, all, HeadTail::head, p), Error); // WrongSize
}

TEST_CASE("head/tail reversal symmetry") {
    ParameterProfile p = ParameterProfile::desk(2);
    for (uint64_t seed = 0; seed < 4; ++seed) {
        Tournament t = random_tournament(24, seed);
        Tournament r = t.reversed();
        Bits all = Bits::full(24);
        for (int a = 0; a < 8; ++a) {
            std::vector<int> s{a, a + 9};
            auto h = is_head_tail(t, s, all, HeadTail::head, p);
            auto tt = is_head_tail(r, s, all, HeadTail::tail, p);
            CHECK(h.ok == tt.ok);
            CHECK(h.witness == tt.witness);
        }
    }
}

TEST_CASE("is_chain") {
    ParameterProfile p = ParameterProfile::desk(2);
    // rotational tournaments: a consecutive run is a chain with large
    // neighborhoods on both ends
    Tournament rot = rotational_tournament(21);
    VertexSeq run{3, 4, 5, 6, 7, 8};
    CHECK(is_chain(rot, run, Bits::full(21), Bits::full(21), p));

    // any sequence failing the power check is not a chain
    Tournament t = transitive(12);
    VertexSeq notpow{5, 3, 1, 2, 4, 6};
    CHECK(!is_chain(t, notpow, Bits::full(12), Bits::full(12), p));

    CHECK_THROWS_AS(is_chain(t, {0, 1, 2}, Bits::full(12), Bits::full(12), p), Error); // TooShort
}

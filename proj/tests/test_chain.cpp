#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chain.hpp"
#include "error.hpp"
#include "generators.hpp"

using namespace powham;

namespace {

void check_partition(const Tournament &t, const Bits &s, const Bits &a, const Bits &b,
                     const PartitionResult &pr, const ParameterProfile &p, int order) {
    Bits seen(t.n);
    for (const Chain &c : pr.chains) {
        CHECK(chain_check(t, c.seq, a, b, p, order)); // revalidation of generated objects
        for (int v : c.seq) {
            CHECK(!seen.test(v));
            seen.set(v);
            CHECK(s.test(v));
        }
    }
    pr.residual.for_each([&](int v) {
        CHECK(!seen.test(v));
        seen.set(v);
    });
    CHECK(seen == s);
    CHECK((double)pr.residual.count() <= p.residual_cap());
}

} // namespace

TEST_CASE("partition_into_chains on random tournaments") {
    ParameterProfile p = ParameterProfile::desk(2);
    Tournament t = random_tournament(200, 11);
    Bits all = Bits::full(200);
    PartitionResult pr = partition_into_chains(t, all, all, all, p);
    CHECK(!pr.chains.empty());
    check_partition(t, all, all, all, pr, p, p.k);
}

TEST_CASE("partition trivial branch: small s is all residual") {
    ParameterProfile p = ParameterProfile::desk(2);
    Tournament t = random_tournament(40, 3);
    Bits s = Bits::of(40, {1, 2, 3, 4, 5});
    PartitionResult pr = partition_into_chains(t, s, Bits::full(40), Bits::full(40), p);
    CHECK(pr.chains.empty());
    CHECK(pr.residual == s);
}

TEST_CASE("partition with cap 32 on a 400-vertex tournament") {
    ParameterProfile p = ParameterProfile::desk(2);
    p.chain_residual_cap = 32;
    for (uint64_t seed = 0; seed < 3; ++seed) {
        p.rng_seed = seed;
        Tournament t = random_tournament(400, seed);
        Bits all = Bits::full(400);
        PartitionResult pr = partition_chains_at_order(t, all, all, all, p, 2, seed);
        CHECK(!pr.stalled);
        CHECK(pr.residual.count() <= 32);
        check_partition(t, all, all, all, pr, p, 2);
    }
}

TEST_CASE("link on a rotational tournament") {
    ParameterProfile p = ParameterProfile::desk(2);
    Tournament t = rotational_tournament(63);
    VertexSeq pi;
    for (int i = 2; i <= 60; ++i) pi.push_back(i); // interior of the natural order
    Bits forbidden(63);
    Linkage lk = link(t, {61, 62}, {0, 1}, pi, forbidden, p);
    CHECK(verify_power_seq(t, lk.path, 2, SeqKind::path));
    CHECK(lk.path[0] == 61);
    CHECK(lk.path[1] == 62);
    CHECK(lk.path[lk.path.size() - 2] == 0);
    CHECK(lk.path.back() == 1);
    for (const auto &s : lk.internal_sets) CHECK(s.size() == 2);
    CHECK(apartness(lk.internal_sets, pi, p.apart_radius));
}

TEST_CASE("link fast path uses a single blob") {
    ParameterProfile p = ParameterProfile::desk(2);
    // random tournaments with near-regular degrees: the direct intersection
    // N+(M) cap N-(N) is large, so one blob suffices
    int single = 0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Tournament t = random_tournament(100, seed);
        VertexSeq pi;
        for (int i = 0; i < 100; ++i) pi.push_back(i);
        VertexSeq m{0, 1}, n{2, 3};
        if (!transitive_order(t, m) || !transitive_order(t, n)) continue;
        VertexSeq mo = *transitive_order(t, m), no = *transitive_order(t, n);
        VertexSeq interior;
        for (int i = 4; i < 100; ++i) interior.push_back(i);
        try {
            Linkage lk = link(t, mo, no, interior, Bits(100), p);
            CHECK(verify_power_seq(t, lk.path, 2, SeqKind::path));
            if (lk.internal_sets.size() == 1) ++single;
        } catch (const Error &) {
        }
    }
    CHECK(single >= 3);
}

TEST_CASE("link fails cleanly with everything forbidden") {
    ParameterProfile p = ParameterProfile::desk(2);
    Tournament t = random_tournament(30, 2);
    VertexSeq pi;
    for (int i = 4; i < 30; ++i) pi.push_back(i);
    Bits forbidden = Bits::full(30);
    VertexSeq m = *transitive_order(t, {0, 1});
    VertexSeq n = *transitive_order(t, {2, 3});
    CHECK_THROWS_AS(link(t, m, n, pi, forbidden, p), Error);
}

TEST_CASE("cover_residual") {
    ParameterProfile p = ParameterProfile::desk(2);
    Tournament t = random_tournament(200, 21);
    Bits all = Bits::full(200);
    PartitionResult pr = partition_into_chains(t, all, all, all, p);
    REQUIRE(!pr.chains.empty());

    // no-op on an empty residual
    CoverResult none = cover_residual(t, pr.chains, Bits(200), p);
    CHECK(none.ok);
    CHECK(none.cover_chains.empty());

    if (pr.residual.any()) {
        CoverResult cr = cover_residual(t, pr.chains, pr.residual, p);
        CHECK(cr.ok);
        CHECK((int)cr.cover_chains.size() == pr.residual.count());
        for (const Chain &c : cr.cover_chains) {
            CHECK(c.seq.size() == 5); // 2k+1
            CHECK(chain_check(t, c.seq, all, all, p, p.k));
        }
        CHECK(!cr.used_sets.empty()); // the X and Y picks are recorded
    }
}

TEST_CASE("cut_dense pipeline on rotational tournaments") {
    ParameterProfile p = ParameterProfile::desk(2);
    for (int n : {63, 101}) {
        p.rng_seed = 7;
        Tournament t = rotational_tournament(n);
        PipelineResult pr = cut_dense_power_hamilton(t, p);
        REQUIRE(pr.found);
        CHECK((int)pr.witness.size() == n);
        CHECK(verify_power_seq(t, pr.witness, 2, SeqKind::cycle));
    }
}

TEST_CASE("cut_dense pipeline on random tournaments") {
    ParameterProfile p = ParameterProfile::desk(2);
    int found = 0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        p.rng_seed = seed;
        Tournament t = random_tournament(128, seed);
        PipelineResult pr = cut_dense_power_hamilton(t, p);
        if (pr.found) {
            CHECK(verify_power_seq(t, pr.witness, 2, SeqKind::cycle));
            ++found;
        } else {
            CHECK(!pr.failed_stage.empty()); // staged failure, never silent
        }
    }
    CHECK(found >= 4);
}

TEST_CASE("cut_dense precondition failure on the transitive tournament") {
    ParameterProfile p = ParameterProfile::desk(2);
    Tournament t(40);
    for (int i = 0; i < 40; ++i)
        for (int j = i + 1; j < 40; ++j) t.set_edge(i, j);
    PipelineResult pr = cut_dense_power_hamilton(t, p);
    CHECK(!pr.found);
    CHECK(pr.failed_stage.find("precondition") != std::string::npos);
}

TEST_CASE("spanning_chain") {
    ParameterProfile p = ParameterProfile::desk(2);
    p.rng_seed = 5;
    Tournament t = rotational_tournament(63);
    Chain c = spanning_chain(t, p);
    CHECK((int)c.seq.size() == 63);
    CHECK(chain_check(t, c.seq, Bits::full(63), Bits::full(63), p, p.k));

    Tournament tiny = random_tournament(3, 1);
    CHECK_THROWS_AS(spanning_chain(tiny, p), Error); // TooSmall
}

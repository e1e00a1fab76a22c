#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bridge.hpp"
#include "error.hpp"
#include "generators.hpp"

using namespace powham;

namespace {

TwoClusterSpec planted_spec() {
    TwoClusterSpec spec;
    spec.half = 64;
    spec.aligned = 2;
    spec.reverse = 2;
    spec.moderate = 8;
    return spec;
}

} // namespace

TEST_CASE("counting_pairs bounds verified exactly") {
    ParameterProfile p = ParameterProfile::desk(2);
    // complete forward bipartite: X = [0,10), Y = [10,20), all X->Y
    Tournament t(20);
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) {
            t.set_edge(i, j);
            t.set_edge(10 + i, 10 + j);
        }
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) t.set_edge(i, 10 + j);
    Bits x(20), y(20);
    for (int i = 0; i < 10; ++i) {
        x.set(i);
        y.set(10 + i);
    }
    CountingPair cp = counting_pairs(t, x, y, p);
    CHECK(cp.delta == 1.0);
    CHECK(cp.y_of_x0.count() >= 10.0 / 8.0);

    // below the gate
    Tournament sparse = random_tournament(20, 1);
    Bits x2(20), y2(20);
    x2.set(0);
    x2.set(1);
    y2.set(10);
    y2.set(11);
    CHECK_THROWS_AS(counting_pairs(sparse, x2, y2, ParameterProfile::strict(2)), Error);

    for (uint64_t seed = 0; seed < 5; ++seed) {
        Tournament r = random_tournament(120, seed);
        Bits rx(120), ry(120);
        for (int i = 0; i < 60; ++i) {
            rx.set(i);
            ry.set(60 + i);
        }
        CountingPair c = counting_pairs(r, rx, ry, p);
        // recompute both witnesses from scratch
        double need_x = c.delta * 60 / 8.0, need_y = c.delta * 60 / 8.0;
        Bits yx(120);
        Bits inx = r.in[c.x0] & rx;
        (r.out[c.x0] & ry).for_each([&](int w) {
            if (r.in[w].intersect_count(inx) >= need_x) yx.set(w);
        });
        CHECK(yx == c.y_of_x0);
        CHECK((double)yx.count() >= need_y);
    }
}

TEST_CASE("find_crossing_power base and failure") {
    ParameterProfile p = ParameterProfile::desk(2);
    // dense forward instance
    Tournament t = random_tournament(40, 7);
    Bits x(40), y(40);
    for (int i = 0; i < 20; ++i) {
        x.set(i);
        y.set(20 + i);
    }
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) t.set_edge(i, 20 + j);
    CrossingResult cr = find_crossing_power(t, x, y, p);
    CHECK(verify_power_seq(t, cr.seq, 2, SeqKind::path));
    for (int i = 0; i < 2; ++i) {
        CHECK(x.test(cr.seq[i]));
        CHECK(y.test(cr.seq[2 + i]));
    }

    // a single forward edge between 2+2 cannot host a square
    Tournament tiny(4);
    tiny.set_edge(0, 1);
    tiny.set_edge(2, 3);
    tiny.set_edge(0, 2); // the lone forward edge
    tiny.set_edge(3, 0);
    tiny.set_edge(2, 1);
    tiny.set_edge(3, 1);
    Bits tx(4), ty(4);
    tx.set(0);
    tx.set(1);
    ty.set(2);
    ty.set(3);
    CHECK_THROWS_AS(find_crossing_power(tiny, tx, ty, p), Error);
}

TEST_CASE("find_crossing_power k=4 on dense random instances") {
    ParameterProfile p = ParameterProfile::desk(4);
    for (uint64_t seed = 0; seed < 5; ++seed) {
        Tournament t = random_tournament(200, seed);
        Bits x(200), y(200);
        for (int i = 0; i < 100; ++i) {
            x.set(i);
            y.set(100 + i);
        }
        CrossingResult cr = find_crossing_power(t, x, y, p);
        CHECK(verify_power_seq(t, cr.seq, 4, SeqKind::path));
        for (int i = 0; i < 4; ++i) {
            CHECK(x.test(cr.seq[i]));
            CHECK(y.test(cr.seq[4 + i]));
        }
        for (auto &lvl : cr.level_densities) {
            CHECK(lvl[1] >= lvl[0] / 8.0 - 1e-9);
            CHECK(lvl[2] >= lvl[1] / 8.0 - 1e-9);
        }
    }
}

TEST_CASE("odd k uses the k+1 machinery and truncates") {
    ParameterProfile p = ParameterProfile::desk(3);
    Tournament t = random_tournament(200, 3);
    Bits x(200), y(200);
    for (int i = 0; i < 100; ++i) {
        x.set(i);
        y.set(100 + i);
    }
    CrossingResult cr = find_crossing_power(t, x, y, p);
    CHECK(cr.seq.size() == 6);
    CHECK(verify_power_seq(t, cr.seq, 3, SeqKind::path));
}

TEST_CASE("prepare_partition strips the planted irregular vertices") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        TwoClusterInstance inst = two_cluster(planted_spec(), seed);
        ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
        SidePartition sp = prepare_partition(inst.t, p);
        for (int v : inst.planted_aligned) CHECK(sp.r.test(v));
        for (int v : inst.planted_reverse) CHECK(sp.r.test(v));
        CHECK(sp.r.count() <= 8);
        CHECK(sp.defect_a <= 16);
        CHECK(sp.defect_b <= 16);
    }
}

TEST_CASE("classify_remainder matches planted types") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        TwoClusterSpec spec = planted_spec();
        spec.moderate = 8;
        TwoClusterInstance inst = two_cluster(spec, seed);
        ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
        // construct the seed partition directly from the planted instance
        SidePartition seedpart;
        seedpart.a = inst.side_a;
        seedpart.b = inst.side_b;
        seedpart.r = inst.remainder;
        SidePartition sp = classify_remainder(inst.t, seedpart, p);
        for (int v : inst.planted_reverse) CHECK(sp.r_bad.test(v));
        for (int v : inst.planted_aligned) CHECK((sp.r_a.test(v) || sp.r_b.test(v)));
        for (int v : inst.planted_moderate) CHECK((sp.r_a.test(v) || sp.r_b.test(v)));
        // aligned vertices have tiny outward degrees, hence are good
        for (int v : inst.planted_aligned) CHECK(sp.r_good.test(v));
    }

    // single-vertex definition check
    TwoClusterSpec spec;
    spec.half = 30;
    spec.aligned = 0;
    spec.reverse = 1;
    spec.moderate = 0;
    TwoClusterInstance inst = two_cluster(spec, 3);
    SidePartition seedpart;
    seedpart.a = inst.side_a;
    seedpart.b = inst.side_b;
    seedpart.r = inst.remainder;
    SidePartition sp = classify_remainder(inst.t, seedpart, ParameterProfile::desk(2));
    CHECK(sp.r_bad.test(inst.planted_reverse[0]));
}

TEST_CASE("empty remainder classifies to empty classes") {
    TwoClusterSpec spec = planted_spec();
    spec.aligned = spec.reverse = spec.moderate = 0;
    TwoClusterInstance inst = two_cluster(spec, 1);
    SidePartition seedpart;
    seedpart.a = inst.side_a;
    seedpart.b = inst.side_b;
    seedpart.r = Bits(inst.t.n);
    SidePartition sp = classify_remainder(inst.t, seedpart, ParameterProfile::desk(2));
    CHECK(sp.r_bad.none());
    CHECK(sp.r_good.none());
    CHECK(sp.chains_a.empty());
    CHECK(sp.chains_b.empty());
}

TEST_CASE("bridge cover and assembly on planted instances") {
    int found = 0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        TwoClusterInstance inst = two_cluster(planted_spec(), seed);
        ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
        SidePartition sp = prepare_partition(inst.t, p);
        sp = classify_remainder(inst.t, sp, p);
        BridgeCover bc = build_bridge_cover(inst.t, sp, p);
        if (!bc.ok) continue;
        CHECK(bc.count_ab == bc.count_ba);
        CHECK(bc.count_ab >= 1);
        Bits seen(inst.t.n);
        for (const Bridge &b : bc.bridges) {
            CHECK(b.side_vertex_count <= 4 * p.k);
            const Bits &from = b.from_side == Side::a ? sp.a : sp.b;
            const Bits &to = b.to_side == Side::a ? sp.a : sp.b;
            CHECK(chain_check(inst.t, b.seq, from, to, p, p.k));
            for (int v : b.seq) {
                CHECK(!seen.test(v));
                seen.set(v);
            }
        }
        CHECK(sp.r.subset_of(bc.used)); // cover invariant
        PipelineResult pr = assemble_from_bridges(inst.t, sp, bc.bridges, p);
        if (pr.found) {
            CHECK(verify_power_seq(inst.t, pr.witness, p.k, SeqKind::cycle));
            ++found;
        }
    }
    CHECK(found >= 3);
}

TEST_CASE("assemble rejects an unbalanced bridge list") {
    TwoClusterInstance inst = two_cluster(planted_spec(), 2);
    ParameterProfile p = ParameterProfile::desk(2, 0.2, 2);
    SidePartition sp = prepare_partition(inst.t, p);
    sp = classify_remainder(inst.t, sp, p);
    BridgeCover bc = build_bridge_cover(inst.t, sp, p);
    REQUIRE(bc.ok);
    std::vector<Bridge> unbalanced = bc.bridges;
    // drop one B->A bridge
    for (size_t i = 0; i < unbalanced.size(); ++i)
        if (unbalanced[i].from_side == Side::b && unbalanced[i].to_side == Side::a) {
            unbalanced.erase(unbalanced.begin() + i);
            break;
        }
    PipelineResult pr = assemble_from_bridges(inst.t, sp, unbalanced, p);
    CHECK(!pr.found);
    CHECK(pr.failed_stage.find("Balance") != std::string::npos);
}

TEST_CASE("main dispatcher small n equals the oracle") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        int n = 6 + (int)(seed % 7);
        Tournament t = random_tournament(n, seed);
        ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
        MainResult mr = main_power_hamilton(t, 2, p);
        SearchOutcome direct = search_power_hamilton(t, 2, SeqKind::cycle);
        REQUIRE(mr.oracle_outcome.has_value());
        CHECK(mr.oracle_outcome->status == direct.status);
        if (direct.witness) CHECK(*mr.oracle_outcome->witness == *direct.witness);
        CHECK(mr.branch == "oracle");
    }
}

TEST_CASE("main dispatcher routes rotational to the cut-dense branch") {
    ParameterProfile p = ParameterProfile::desk(2, 0.2, 3);
    Tournament t = rotational_tournament(63);
    MainResult mr = main_power_hamilton(t, 2, p);
    REQUIRE(mr.pipeline.found);
    CHECK(mr.branch == "cut-dense");
    CHECK(verify_power_seq(t, mr.pipeline.witness, 2, SeqKind::cycle));
}

TEST_CASE("main dispatcher routes planted sparse instances to bridges") {
    int found = 0, bridged = 0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        TwoClusterInstance inst = two_cluster(planted_spec(), seed);
        ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
        MainResult mr = main_power_hamilton(inst.t, 2, p);
        if (mr.pipeline.found) {
            CHECK(verify_power_seq(inst.t, mr.pipeline.witness, 2, SeqKind::cycle));
            ++found;
            if (mr.branch.find("bridge") != std::string::npos) ++bridged;
        }
        if (mr.bridge_cover && mr.bridge_cover->ok)
            CHECK(mr.bridge_cover->count_ab == mr.bridge_cover->count_ba);
    }
    CHECK(found >= 4);
    CHECK(bridged >= 3);
}

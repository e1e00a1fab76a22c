// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bridge.hpp"
#include "chain.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "structure.hpp"

using namespace powham;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count() /
           1000.0;
}

void report(int idx, const std::string &name, bool pass, const std::string &detail,
            bool skipped = false) {
    const char *tag = skipped ? "SKIP" : (pass ? "PASS" : "FAIL");
    std::printf("[%s] criterion %2d: %-34s %s\n", tag, idx, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass && !skipped) ++failures;
}

// ---- 1: oracle soundness vs Camion ----------------------------------------

void criterion1() {
    Clock::time_point t0 = Clock::now();
    int mismatches = 0, runs = 0;
    for (uint64_t seed = 0; seed < 500; ++seed) {
        int n = 4 + (int)(seed % 7);
        Tournament t = random_tournament(n, 1000 + seed);
        SearchOutcome so = search_power_hamilton(t, 1, SeqKind::cycle);
        bool found = so.status == SearchStatus::found;
        if (so.status == SearchStatus::budget_exceeded || found != strongly_connected(t))
            ++mismatches;
        if (found && !verify_power_seq(t, *so.witness, 1, SeqKind::cycle)) ++mismatches;
        ++runs;
    }
    double secs = seconds_since(t0);
    report(1, "oracle soundness (Camion)", mismatches == 0 && secs < 10.0,
           std::to_string(runs) + " instances, " + std::to_string(mismatches) +
               " mismatches, " + std::to_string(secs) + "s");
}

// ---- 2: classical degree theorem -------------------------------------------

void criterion2() {
    int qualifying = 0, misses = 0;
    for (uint64_t seed = 0; seed < 500; ++seed) {
        int n = 5 + (int)(seed % 7);
        Tournament t = random_tournament(n, 2000 + seed);
        if (4 * min_semidegree(t) < n - 2) continue;
        ++qualifying;
        SearchOutcome so = search_power_hamilton(t, 1, SeqKind::cycle);
        if (so.status != SearchStatus::found) ++misses;
    }
    report(2, "semidegree (n-2)/4 Hamilton cycle", misses == 0,
           std::to_string(qualifying) + " qualifying instances, " + std::to_string(misses) +
               " without a cycle");
}

// ---- 3: transitive fraction bound -------------------------------------------

void criterion3() {
    Clock::time_point t0 = Clock::now();
    int violations = 0;
    for (int k : {2, 3}) {
        double bound = std::pow(2.0, -(double)k * k);
        for (uint64_t seed = 0; seed < 100; ++seed) {
            Tournament t = random_tournament(16, 3000 + 100 * k + seed);
            FractionEstimate fe = transitive_fraction(t, k);
            if (!fe.exact || fe.fraction <= bound) ++violations;
        }
    }
    double secs = seconds_since(t0);
    report(3, "transitive fraction > 1/2^(k^2)", violations == 0 && secs < 30.0,
           std::to_string(violations) + " violations, " + std::to_string(secs) + "s");
}

// ---- 4: cube-free refutation at n=11 ----------------------------------------

void criterion4() {
    Clock::time_point t0 = Clock::now();
    bool pass = true;
    std::string detail;
    try {
        auto [t, cert] = build_cube_free_tournament(matching_bipartite(5), 1);
        pass = pass && t.n == 11 && cert.semidegree == 3;
        Verdict v = verify_construction(t, cert);
        pass = pass && v.pass;
        SearchOutcome so = search_power_hamilton(t, 3, SeqKind::cycle);
        pass = pass && so.status == SearchStatus::exhausted_none;
        detail = "semidegree " + std::to_string(cert.semidegree) + ", oracle " +
                 search_status_name(so.status) + ", " + std::to_string(so.nodes_expanded) +
                 " nodes";
    } catch (const Error &e) {
        pass = false;
        detail = e.what();
    }
    double secs = seconds_since(t0);
    report(4, "cube-free refutation n=11", pass && secs < 60.0,
           detail + ", " + std::to_string(secs) + "s");
}

// ---- 5: K_{2,2}-free refutation at n=15 ------------------------------------

void criterion5() {
    Clock::time_point t0 = Clock::now();
    bool pass = true;
    std::string detail;
    try {
        auto [t, cert] = build_krr_free_tournament(incidence_graph_pg(2), 4);
        pass = pass && t.n == 15 && cert.semidegree == 7;
        Verdict v = verify_construction(t, cert);
        pass = pass && v.pass;
        SearchOutcome so = search_power_hamilton(t, 4, SeqKind::cycle);
        pass = pass && so.status == SearchStatus::exhausted_none;
        detail = "semidegree " + std::to_string(cert.semidegree) + ", oracle " +
                 search_status_name(so.status) + ", " + std::to_string(so.nodes_expanded) +
                 " nodes";
    } catch (const Error &e) {
        pass = false;
        detail = e.what();
    }
    double secs = seconds_since(t0);
    report(5, "K22-free refutation n=15", pass && secs < 600.0,
           detail + ", " + std::to_string(secs) + "s");
}

// ---- 6: destroying-powers property ------------------------------------------

void criterion6() {
    Rng rng = make_rng(0x6);
    int bad = 0;
    for (int it = 0; it < 1000; ++it) {
        int r1 = 2 + (int)(rng() % 4);
        int r2 = 1 + (int)(rng() % (r1 - 1));
        int n = 36 + (int)(rng() % 16);
        Tournament t = random_tournament(n, rng());
        int plen = 2 * r1 + 4 + (int)(rng() % (n - 2 * r1 - 6));
        VertexSeq p = sample_distinct(rng, n, plen);
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 1; j < std::min(p.size(), i + r1 + 1); ++j)
                t.set_edge(p[i], p[j]);
        std::vector<std::vector<int>> sets;
        size_t pos = rng() % (r1 + 2);
        while (pos < p.size()) {
            int sz = 1 + (int)(rng() % r2);
            std::vector<int> s;
            for (int i = 0; i < sz && pos + i < p.size(); ++i) s.push_back(p[pos + i]);
            if (!s.empty()) sets.push_back(s);
            pos += sz + r1 + 1 + rng() % 4;
        }
        try {
            ApartCollection coll{sets, p, r1};
            VertexSeq rest = delete_sparse_sets(t, p, coll, r1, r2);
            if (!verify_power_seq(t, rest, r1 - r2, SeqKind::path)) ++bad;
        } catch (const Error &) {
            ++bad;
        }
    }
    report(6, "destroying powers (1000 planted)", bad == 0, std::to_string(bad) + " failures");
}

// ---- 7: KST floor -----------------------------------------------------------

void criterion7() {
    Rng rng = make_rng(0x7);
    int bad = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 20 + (int)(rng() % 21); // N <= 40
        int k = 1 + (int)(rng() % 3);
        double alpha = 0.3 + (rng() % 40) / 100.0;
        int tcount = std::max((int)std::ceil(k / alpha), 4 + (int)(rng() % 17));
        int setsz = std::max(1, (int)std::ceil(alpha * n));
        std::vector<Bits> sets;
        for (int i = 0; i < tcount; ++i)
            sets.push_back(Bits::of(n, sample_distinct(rng, n, setsz)));
        double floor = std::pow(alpha / std::exp(1.0), k) * n;
        try {
            KstResult r = kst_intersect(sets, n, k, alpha);
            if ((double)r.intersection.count() < floor) ++bad;
            if ((int)r.indices.size() != k) ++bad;
            // exhaustive cross-check for k <= 3
            Bits best(n);
            int bestc = -1;
            std::vector<int> idx(k);
            std::function<void(int, int, Bits)> go = [&](int start, int depth, Bits inter) {
                if (depth == k) {
                    if (inter.count() > bestc) bestc = inter.count();
                    return;
                }
                for (int i = start; i < tcount; ++i) go(i + 1, depth + 1, inter & sets[i]);
            };
            go(0, 0, Bits::full(n));
            if ((double)bestc < floor) ++bad; // the lemma itself would be violated
        } catch (const Error &) {
            ++bad;
        }
    }
    report(7, "KST intersection floor (200)", bad == 0, std::to_string(bad) + " failures");
}

// ---- 8: DRC audit -----------------------------------------------------------

void criterion8() {
    int ok = 0, audited = 0;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        BipartiteGraph g = random_bipartite(200, 200, 0.5, 8000 + seed);
        ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
        p.drc_s = 8;
        p.drc_m = 10;
        try {
            DrcResult r = drc_select(g, Side::a, p, 5);
            ++ok;
            if (r.audit.exhaustive && r.audit.bad_fraction < r.audit.allowed_fraction &&
                r.u.count() >= 8)
                ++audited;
        } catch (const Error &) {
        }
    }
    report(8, "DRC select + exhaustive audit", ok >= 99 && audited == ok,
           std::to_string(ok) + "/100 within 5 retries, " + std::to_string(audited) +
               " exhaustive passing audits");
}

// ---- 9: crossing construction -----------------------------------------------

void criterion9() {
    int good = 0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Tournament t = random_tournament(200, 9000 + seed);
        Bits x(200), y(200);
        for (int i = 0; i < 100; ++i) {
            x.set(i);
            y.set(100 + i);
        }
        ParameterProfile p = ParameterProfile::desk(4, 0.2, seed);
        try {
            CrossingResult cr = find_crossing_power(t, x, y, p);
            bool v = verify_power_seq(t, cr.seq, 4, SeqKind::path);
            for (int i = 0; i < 4; ++i) v = v && x.test(cr.seq[i]) && y.test(cr.seq[4 + i]);
            for (auto &lvl : cr.level_densities)
                v = v && lvl[1] >= lvl[0] / 8.0 - 1e-9 && lvl[2] >= lvl[1] / 8.0 - 1e-9;
            if (v) ++good;
        } catch (const Error &) {
        }
    }
    report(9, "crossing k=4 density 0.5", good == 50, std::to_string(good) + "/50 validated");
}

// ---- 10: cut-dense pipeline calibration --------------------------------------

void criterion10() {
    struct Setting {
        std::string name;
        bool rotational;
        int n;
    };
    bool pass = true;
    std::string detail;
    for (const Setting &s : {Setting{"rot63", true, 63}, Setting{"rot101", true, 101},
                             Setting{"rand128", false, 128}}) {
        int found = 0, invalid = 0, unstaged = 0;
        double worst = 0;
        for (uint64_t seed = 0; seed < 50; ++seed) {
            Tournament t = s.rotational ? rotational_tournament(s.n)
                                        : random_tournament(s.n, 10000 + seed);
            ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
            Clock::time_point rt0 = Clock::now();
            PipelineResult pr = cut_dense_power_hamilton(t, p);
            worst = std::max(worst, seconds_since(rt0));
            if (pr.found) {
                if (verify_power_seq(t, pr.witness, 2, SeqKind::cycle) &&
                    (int)pr.witness.size() == s.n)
                    ++found;
                else ++invalid;
            } else if (pr.failed_stage.empty()) {
                ++unstaged;
            }
        }
        bool ok = found >= 45 && invalid == 0 && unstaged == 0 && worst < 5.0;
        pass = pass && ok;
        detail += s.name + ":" + std::to_string(found) + "/50 (worst " +
                  std::to_string(worst).substr(0, 4) + "s) ";
    }
    report(10, "cut-dense calibration", pass, detail);
}

// ---- 11: sparse-cut pipeline calibration --------------------------------------

void criterion11() {
    // (a) the literal criterion instance: forward edges ceil(n^{3/2})
    TwoClusterSpec lit;
    lit.half = 64;
    lit.aligned = 2;
    lit.reverse = 2;
    lit.moderate = 8;
    int nlit = 2 * lit.half + 12;
    lit.forward_edges = (int)std::ceil(std::pow((double)nlit, 1.5));
    // (b) the sparse-calibrated instance: auto forward count (4% density)
    TwoClusterSpec sparse = lit;
    sparse.forward_edges = -1;

    bool pass = true;
    std::string detail;
    int variant = 0;
    for (const TwoClusterSpec &spec : {lit, sparse}) {
        ++variant;
        int found = 0, invalid = 0, unbalanced = 0, bridged = 0;
        for (uint64_t seed = 0; seed < 50; ++seed) {
            TwoClusterInstance inst = two_cluster(spec, 11000 + seed);
            ParameterProfile p = ParameterProfile::desk(2, 0.2, seed);
            MainResult mr = main_power_hamilton(inst.t, 2, p);
            if (mr.pipeline.found) {
                if (verify_power_seq(inst.t, mr.pipeline.witness, 2, SeqKind::cycle) &&
                    (int)mr.pipeline.witness.size() == inst.t.n)
                    ++found;
                else ++invalid;
            }
            if (mr.bridge_cover && mr.bridge_cover->ok) {
                ++bridged;
                if (mr.bridge_cover->count_ab != mr.bridge_cover->count_ba ||
                    mr.bridge_cover->count_ab < 1)
                    ++unbalanced;
            }
        }
        bool ok = found >= 40 && invalid == 0 && unbalanced == 0;
        pass = pass && ok;
        detail += std::string(variant == 1 ? "literal" : "sparse") + ":" +
                  std::to_string(found) + "/50";
        if (bridged) detail += " (" + std::to_string(bridged) + " bridge covers)";
        detail += " ";
    }
    report(11, "sparse-cut calibration", pass, detail);
}

// ---- 12: eulerian completion property -----------------------------------------

void criterion12() {
    Rng rng = make_rng(0x12);
    int bad = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 4 + (int)(rng() % 47); // up to 50
        UndirectedGraph g = random_even_graph(n, 0.2 + (rng() % 60) / 100.0, rng());
        try {
            auto orient = eulerian_regular_completion(g);
            std::vector<int> in(n, 0), out(n, 0);
            for (auto [u, v] : orient) {
                out[u]++;
                in[v]++;
            }
            for (int v = 0; v < n; ++v)
                if (in[v] != g.degree(v) / 2 || out[v] != g.degree(v) / 2) ++bad;
        } catch (const Error &) {
            ++bad;
        }
    }
    report(12, "eulerian balanced orientation (200)", bad == 0, std::to_string(bad) + " failures");
}

// ---- 13: type II degree identity ----------------------------------------------

void criterion13() {
    auto [t1, cert1] = build_cube_free_tournament(matching_bipartite(5), 1);
    bool d1_ok = cert1.type2_edges.empty();

    auto cage = tutte_12_cage();
    if (!cage) {
        // the d=1 half is unconditional; the d=3 half is skipped without input
        if (d1_ok)
            report(13, "type II degree identity", true,
                   "d=1: 0 per vertex; d=3 skipped (no girth-12 input)", /*skipped=*/true);
        else report(13, "type II degree identity", false, "d=1 fixture violates the identity");
        return;
    }
    auto [t3, cert3] = build_cube_free_tournament(*cage, 3);
    std::vector<int> din(63, 0), dout(63, 0);
    for (auto [a1, a2] : cert3.type2_edges) {
        dout[a1]++;
        din[a2]++;
    }
    bool d3_ok = true;
    for (int a = 0; a < 63; ++a) d3_ok = d3_ok && din[a] == 6 && dout[a] == 6;
    report(13, "type II degree identity", d1_ok && d3_ok,
           std::string("d=1: 0 per vertex; d=3 (12-cage): 6 per vertex ") +
               (d3_ok ? "verified" : "VIOLATED"));
}

// ---- 14: mutation sensitivity ---------------------------------------------------

void criterion14() {
    Rng rng = make_rng(0x14);
    auto [t11, cert11] = build_cube_free_tournament(matching_bipartite(5), 1);
    auto [t15, cert15] = build_krr_free_tournament(incidence_graph_pg(2), 4);
    SearchOutcome base11 = search_power_hamilton(t11, 3, SeqKind::cycle);
    SearchOutcome base15 = search_power_hamilton(t15, 4, SeqKind::cycle);

    int undetected = 0;
    for (int it = 0; it < 50; ++it) {
        bool on11 = rng() & 1;
        Tournament t = on11 ? t11 : t15;
        int n = t.n;
        int u = (int)(rng() % n), v = (int)(rng() % n);
        while (v == u) v = (int)(rng() % n);
        t.flip_edge(u, v);
        bool detected = !verify_construction(t, on11 ? cert11 : cert15).pass;
        if (!detected) {
            SearchOutcome so = search_power_hamilton(t, on11 ? 3 : 4, SeqKind::cycle);
            detected = so.status != (on11 ? base11 : base15).status;
        }
        if (!detected) ++undetected;
    }
    report(14, "mutation sensitivity (50 flips)", undetected == 0,
           std::to_string(undetected) + " undetected mutations");
}

} // namespace

int main() {
    Clock::time_point t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13();
    criterion14();
    std::printf("%s: %d criterion failure(s), %.1fs total\n", failures ? "FAIL" : "PASS",
                failures, seconds_since(t0));
    return failures;
}

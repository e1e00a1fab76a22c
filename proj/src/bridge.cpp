#include "bridge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace powham {

// ---------------------------------------------------------------------------
// preparation
// ---------------------------------------------------------------------------

SidePartition prepare_partition(const Tournament &t, const ParameterProfile &p) {
    int n = t.n;
    require(n >= 8, Errc::precondition_failed, "side preparation needs n >= 8");
    CutWitness cut = (n <= 22)
                         ? balanced_cut_density(t, CutMode::exact)
                         : balanced_cut_density(t, CutMode::heuristic, SearchBudget::unlimited(),
                                                p.rng_seed, 22, 16);
    const Bits &ap = cut.part_x; // forward-sparse direction: e(A', B') minimal
    const Bits &bp = cut.part_y;
    double delta = 4.0 * (double)cut.forward_edges / ((double)n * n);

    double tau1 = 2.0 * std::sqrt(delta) * n;
    double tau2 = std::pow(delta, 0.25) * n;
    if (!p.is_strict()) {
        tau1 = std::min(tau1, 0.8 * bp.count());
        tau2 = std::min(tau2, 0.1 * n);
    }

    SidePartition sp;
    sp.cut_delta = delta;
    sp.a = Bits(n);
    sp.b = Bits(n);
    sp.r = Bits(n);
    ap.for_each([&](int v) {
        bool strip = t.out[v].intersect_count(bp) >= tau1 ||
                     t.out[v].intersect_count(ap) >= n / 4.0 + tau2;
        if (strip) sp.r.set(v);
        else sp.a.set(v);
    });
    bp.for_each([&](int v) {
        bool strip = t.in[v].intersect_count(ap) >= tau1 ||
                     t.in[v].intersect_count(bp) >= n / 4.0 + tau2;
        if (strip) sp.r.set(v);
        else sp.b.set(v);
    });
    require(2 * sp.a.count() >= ap.count() && 2 * sp.b.count() >= bp.count(),
            Errc::precondition_failed,
            "DegenerateStrip: a side lost more than half its vertices");
    {
        std::vector<int> ids;
        Tournament ta = t.induced(sp.a, &ids);
        sp.defect_a = regularity_defect(ta);
        Tournament tb = t.induced(sp.b, &ids);
        sp.defect_b = regularity_defect(tb);
    }
    return sp;
}

SidePartition classify_remainder(const Tournament &t, SidePartition sp,
                                 const ParameterProfile &p) {
    int n = t.n, k = p.k;
    sp.r_bad = Bits(n);
    sp.r_a = Bits(n);
    sp.r_b = Bits(n);
    double ca = sp.a.count() / 10.0, cb = sp.b.count() / 10.0;
    sp.r.for_each([&](int v) {
        double din_a = t.in[v].intersect_count(sp.a);
        double dout_b = t.out[v].intersect_count(sp.b);
        if (din_a < ca && dout_b < cb) {
            sp.r_bad.set(v);
        } else if (din_a < ca) {
            sp.r_b.set(v);
        } else if (dout_b < cb) {
            sp.r_a.set(v);
        } else {
            // both eligible; larger normalized degree wins, ties to R_A
            if (din_a / std::max(1.0, (double)sp.a.count()) >=
                dout_b / std::max(1.0, (double)sp.b.count()))
                sp.r_a.set(v);
            else sp.r_b.set(v);
        }
    });

    Bits ab = sp.a | sp.b;
    int heavy_order = p.is_strict() ? 10 * k : 3 * k;
    // (B,A,k)-chains inside R_bad
    PartitionResult pb =
        partition_chains_at_order(t, sp.r_bad, sp.b, sp.a, p, k, p.rng_seed ^ 0xbad);
    sp.chains_bad = std::move(pb.chains);
    sp.res_bad = pb.residual;
    // (A, A u B, heavy)-chains inside R_A
    PartitionResult pa =
        partition_chains_at_order(t, sp.r_a, sp.a, ab, p, heavy_order, p.rng_seed ^ 0xa);
    sp.chains_a = std::move(pa.chains);
    sp.res_a = pa.residual;
    // (A u B, B, heavy)-chains inside R_B
    PartitionResult pbb =
        partition_chains_at_order(t, sp.r_b, ab, sp.b, p, heavy_order, p.rng_seed ^ 0xb);
    sp.chains_b = std::move(pbb.chains);
    sp.res_b = pbb.residual;

    sp.pi.clear();
    for (const Chain &c : sp.chains_a) sp.pi.insert(sp.pi.end(), c.seq.begin(), c.seq.end());
    for (const Chain &c : sp.chains_b) sp.pi.insert(sp.pi.end(), c.seq.begin(), c.seq.end());

    int rprime = (sp.res_a | sp.res_b).count();
    sp.d_param = p.is_strict() ? (int)std::min(1e18, std::pow(2.0, 200.0 * k) * (rprime + 1))
                               : std::max(2 * k, (n + 19) / 20);

    double gate = 2.0 * sp.d_param;
    sp.r_good = Bits(n);
    (sp.res_a | sp.res_b).for_each([&](int v) {
        double s = t.out[v].intersect_count(sp.a | sp.r_a) +
                   t.in[v].intersect_count(sp.b | sp.r_b);
        if (s <= gate) sp.r_good.set(v);
    });
    sp.x = sp.a | sp.r_a;
    sp.x.andnot(sp.r_good);
    sp.y = sp.b | sp.r_b;
    sp.y.andnot(sp.r_good);
    return sp;
}

// ---------------------------------------------------------------------------
// counting lemma
// ---------------------------------------------------------------------------

CountingPair counting_pairs(const Tournament &t, const Bits &x, const Bits &y,
                            const ParameterProfile &p) {
    CountingPair cp;
    long long xc = x.count(), yc = y.count();
    require(xc >= 1 && yc >= 1, Errc::precondition_failed, "empty part");
    long long e = 0;
    x.for_each([&](int v) { e += t.out[v].intersect_count(y); });
    cp.delta = (double)e / ((double)xc * yc);
    double floor_gate = p.is_strict() ? 1024.0 : (double)std::max(1, p.desk_floor / 2);
    require(cp.delta * xc > floor_gate && cp.delta * yc > floor_gate, Errc::precondition_failed,
            "counting lemma gate: delta|X| or delta|Y| too small");

    double need_x = cp.delta * xc / 8.0, need_y = cp.delta * yc / 8.0;
    cp.y_of_x0 = Bits(t.n);
    cp.x_of_y0 = Bits(t.n);
    int best = -1;
    Bits bestset(t.n);
    x.for_each([&](int v) {
        Bits yx(t.n);
        Bits inv = t.in[v] & x;
        (t.out[v] & y).for_each([&](int w) {
            if (t.in[w].intersect_count(inv) >= need_x) yx.set(w);
        });
        if (yx.count() > best) {
            best = yx.count();
            bestset = yx;
            cp.x0 = v;
        }
    });
    cp.y_of_x0 = bestset;
    if ((double)best < need_y) fail(Errc::not_found, "no x0 with |Y(x0)| >= delta|Y|/8");

    best = -1;
    y.for_each([&](int v) {
        Bits xy(t.n);
        Bits outv = t.out[v] & y;
        (t.in[v] & x).for_each([&](int u) {
            if (t.out[u].intersect_count(outv) >= need_y) xy.set(u);
        });
        if (xy.count() > best) {
            best = xy.count();
            bestset = xy;
            cp.y0 = v;
        }
    });
    cp.x_of_y0 = bestset;
    if ((double)best < need_x) fail(Errc::not_found, "no y0 with |X(y0)| >= delta|X|/8");
    return cp;
}

// ---------------------------------------------------------------------------
// crossing construction
// ---------------------------------------------------------------------------

namespace {

struct CrossingSearch {
    const Tournament &t;
    const ParameterProfile &p;
    std::vector<std::array<double, 3>> levels;
    std::string fail_at;

    CrossingSearch(const Tournament &t_, const ParameterProfile &p_) : t(t_), p(p_) {}

    static double density(const Tournament &t, const Bits &x, const Bits &y) {
        long long e = 0;
        x.for_each([&](int v) { e += t.out[v].intersect_count(y); });
        double prod = (double)x.count() * (double)y.count();
        return prod > 0 ? (double)e / prod : 0.0;
    }

    // candidates for the counting-lemma vertex, best |Y(b)| first
    std::vector<std::pair<Bits, int>> b_candidates(const Bits &x, const Bits &y, double delta,
                                                   int cap) const {
        double need = delta * x.count() / 8.0;
        std::vector<std::pair<int, int>> scored;
        std::vector<Bits> ybs;
        x.for_each([&](int v) {
            Bits yb(t.n);
            Bits inv = t.in[v] & x;
            (t.out[v] & y).for_each([&](int w) {
                if (t.in[w].intersect_count(inv) >= need) yb.set(w);
            });
            scored.emplace_back(-yb.count(), v);
            ybs.push_back(yb);
        });
        std::vector<size_t> idx(scored.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](size_t i, size_t j) { return scored[i] < scored[j]; });
        std::vector<std::pair<Bits, int>> out;
        for (size_t i = 0; i < idx.size() && (int)out.size() < cap; ++i) {
            if (ybs[idx[i]].count() < 2) break;
            out.emplace_back(ybs[idx[i]], scored[idx[i]].second);
        }
        return out;
    }

    std::optional<VertexSeq> base_case(const Bits &x, const Bits &y, double delta) {
        auto cands = b_candidates(x, y, delta, 8);
        if (cands.empty()) {
            fail_at = "pick-b";
            return std::nullopt;
        }
        for (auto &[yb, b] : cands) {
            std::vector<int> ys = yb.to_vector();
            for (int c : ys)
                for (int d : ys) {
                    if (c == d || !t.edge(c, d)) continue;
                    Bits apool = t.in[b] & t.in[c] & x;
                    apool.reset(b);
                    int a = apool.next(0);
                    if (a < 0) continue;
                    return VertexSeq{a, b, c, d};
                }
        }
        fail_at = "pick-a";
        return std::nullopt;
    }

    std::optional<VertexSeq> rec(const Bits &x, const Bits &y, int k, int depth) {
        double delta = density(t, x, y);
        if (x.count() < k || y.count() < k || delta <= 0) {
            fail_at = "shrink(depth " + std::to_string(depth) + ")";
            return std::nullopt;
        }
        if (k == 2) return base_case(x, y, delta);

        auto bcands = b_candidates(x, y, delta, 6);
        if (bcands.empty()) {
            fail_at = "pick-b(depth " + std::to_string(depth) + ")";
            return std::nullopt;
        }
        for (auto &[yb, b] : bcands) {
            // d: a quarter of Y(b) in its in-neighborhood
            std::vector<std::pair<int, int>> ds;
            yb.for_each([&](int v) { ds.emplace_back(-(t.in[v].intersect_count(yb)), v); });
            std::sort(ds.begin(), ds.end());
            int dtry = 0;
            for (auto &[negd, d] : ds) {
                if (++dtry > 4) break;
                if (-negd < (yb.count() + 3) / 4) break;
                Bits y1 = yb & t.in[d];
                Bits x1 = t.in[b] & x;
                if (y1.count() < k - 1 || x1.count() < k - 1) continue;
                double d1 = density(t, x1, y1);

                double need1 = d1 * x1.count() / 8.0;
                std::vector<std::pair<int, int>> cs;
                std::vector<Bits> xcs;
                y1.for_each([&](int v) {
                    Bits xc(t.n);
                    Bits outv = t.out[v] & y1;
                    (t.in[v] & x1).for_each([&](int u) {
                        if (t.out[u].intersect_count(outv) >= need1) xc.set(u);
                    });
                    cs.emplace_back(-xc.count(), v);
                    xcs.push_back(xc);
                });
                std::vector<size_t> order(cs.size());
                for (size_t i = 0; i < order.size(); ++i) order[i] = i;
                std::sort(order.begin(), order.end(),
                          [&](size_t i, size_t j) { return cs[i] < cs[j]; });
                int ctry = 0;
                for (size_t ci : order) {
                    if (++ctry > 6) break;
                    int c = cs[ci].second;
                    const Bits &x1c = xcs[ci];
                    if (x1c.none()) break;
                    std::vector<std::pair<int, int>> as;
                    x1c.for_each(
                        [&](int u) { as.emplace_back(-(t.out[u].intersect_count(x1c)), u); });
                    std::sort(as.begin(), as.end());
                    int atry = 0;
                    for (auto &[nega, a] : as) {
                        if (++atry > 4) break;
                        if (-nega < (x1c.count() + 3) / 4) break;
                        Bits x2 = x1c & t.out[a];
                        Bits y2 = y1 & t.out[c];
                        y2.reset(d);
                        x2.reset(b);
                        if (x2.count() < k - 2 || y2.count() < k - 2) continue;
                        double d2 = density(t, x2, y2);
                        auto sub = rec(x2, y2, k - 2, depth + 1);
                        if (!sub) continue;
                        levels.push_back({delta, d1, d2});
                        VertexSeq seq;
                        seq.push_back(a);
                        seq.insert(seq.end(), sub->begin(), sub->begin() + (k - 2));
                        seq.push_back(b);
                        seq.push_back(c);
                        seq.insert(seq.end(), sub->begin() + (k - 2), sub->end());
                        seq.push_back(d);
                        return seq;
                    }
                }
            }
        }
        if (fail_at.empty()) fail_at = "pick-d(depth " + std::to_string(depth) + ")";
        return std::nullopt;
    }
};

} // namespace

CrossingResult find_crossing_power(const Tournament &t, const Bits &x, const Bits &y,
                                   const ParameterProfile &p) {
    int k = p.k;
    int keven = (k % 2 == 0) ? k : k + 1;
    double delta = CrossingSearch::density(t, x, y);
    if (p.is_strict()) {
        double need = std::pow(2.0, 10.0 * keven * keven);
        require(std::pow(delta, keven / 2.0) * x.count() > need &&
                    std::pow(delta, keven / 2.0) * y.count() > need,
                Errc::precondition_failed, "crossing gate: delta^{k/2}|X|,|Y| <= 2^{10k^2}");
    } else {
        require(x.count() >= keven && y.count() >= keven && delta > 0,
                Errc::precondition_failed, "crossing gate: parts too small or no forward edges");
    }
    CrossingSearch cs(t, p);
    auto seq = cs.rec(x, y, keven, 0);
    if (!seq)
        fail(Errc::not_found, "RecursionFailed(" + cs.fail_at + ")");
    if (k % 2 == 1) { // odd k: drop the first x and the last y
        VertexSeq cut(seq->begin() + 1, seq->begin() + keven);
        cut.insert(cut.end(), seq->begin() + keven, seq->begin() + keven + k);
        *seq = cut;
    }
    for (int i = 0; i < k; ++i)
        require(x.test((*seq)[i]) && y.test((*seq)[k + i]), Errc::invariant_violation,
                "crossing sequence leaves X^k x Y^k");
    require(verify_power_seq(t, *seq, k, SeqKind::path), Errc::invariant_violation,
            "crossing sequence is not a k-power");
    for (auto &lvl : cs.levels) {
        require(lvl[1] >= lvl[0] / 8.0 - 1e-9, Errc::invariant_violation,
                "delta_1 below delta/8");
        require(lvl[2] >= lvl[1] / 8.0 - 1e-9, Errc::invariant_violation,
                "delta_2 below delta_1/8");
    }
    CrossingResult res;
    res.seq = *seq;
    res.level_densities = cs.levels;
    return res;
}

// ---------------------------------------------------------------------------
// bridge cover
// ---------------------------------------------------------------------------

namespace {

struct CoverState {
    const Tournament &t;
    const SidePartition &sp;
    const ParameterProfile &p;
    int k;
    int radius;
    Tournament trev;

    Bits fset;    // consumed vertices and pi hulls
    Bits covered; // covered remainder vertices
    std::vector<Bridge> bridges;
    std::vector<std::vector<std::vector<int>>> donated_a, donated_b, donated_bad;
    std::vector<int> pos; // position in sp.pi
    int count_ab = 0, count_ba = 0;
    Rng rng;

    CoverState(const Tournament &t_, const SidePartition &sp_, const ParameterProfile &p_)
        : t(t_), sp(sp_), p(p_), k(p_.k),
          radius(p_.is_strict() ? 10 * p_.k : 3 * p_.k), trev(t_.reversed()), fset(t_.n),
          covered(t_.n), donated_a(sp_.chains_a.size()), donated_b(sp_.chains_b.size()),
          donated_bad(sp_.chains_bad.size()), pos(t_.n, -1), rng(make_rng(p_.rng_seed ^ 0xb71d6e)) {
        for (size_t i = 0; i < sp.pi.size(); ++i) pos[sp.pi[i]] = (int)i;
    }

    double thr(const Bits &ground) const { return p.head_tail_threshold(ground.count(), k); }

    // bridge anchors must keep usable neighborhoods after the remaining
    // construction consumes up to half a side
    double anchor_thr(const Bits &ground) const {
        return std::max(thr(ground), ground.count() / 6.0);
    }

    // record a bridge: vertices leave every pool; pi members get hulls and
    // are booked as donated sets for the destroying-lemma deletion later
    void reserve(const Bridge &br) {
        std::vector<int> in_pi;
        for (int v : br.seq) {
            fset.set(v);
            if (sp.r.test(v)) covered.set(v);
            if (pos[v] >= 0) in_pi.push_back(v);
        }
        for (int v : in_pi) {
            int lo = std::max(0, pos[v] - radius);
            int hi = std::min((int)sp.pi.size() - 1, pos[v] + radius);
            for (int j = lo; j <= hi; ++j) fset.set(sp.pi[j]);
        }
        if (!in_pi.empty()) {
            // split by home chain
            auto book = [&](const std::vector<Chain> &chains,
                            std::vector<std::vector<std::vector<int>>> &donated) {
                for (size_t ci = 0; ci < chains.size(); ++ci) {
                    std::vector<int> part;
                    Bits member = Bits::of(t.n, chains[ci].seq);
                    for (int v : in_pi)
                        if (member.test(v)) part.push_back(v);
                    if (!part.empty()) donated[ci].push_back(part);
                }
            };
            book(sp.chains_a, donated_a);
            book(sp.chains_b, donated_b);
            book(sp.chains_bad, donated_bad);
        }
        if (br.from_side == Side::a && br.to_side == Side::b) count_ab++;
        if (br.from_side == Side::b && br.to_side == Side::a) count_ba++;
        bridges.push_back(br);
    }

    bool validate_bridge(Bridge &br) const {
        const Bits &from = br.from_side == Side::a ? sp.a : sp.b;
        const Bits &to = br.to_side == Side::a ? sp.a : sp.b;
        for (int i = 0; i < k; ++i)
            if (!from.test(br.seq[i]) || !to.test(br.seq[br.seq.size() - k + i])) return false;
        br.side_vertex_count = 0;
        Bits ab = sp.a | sp.b;
        for (int v : br.seq)
            if (ab.test(v)) br.side_vertex_count++;
        if (br.side_vertex_count > 4 * k) return false;
        return chain_check(t, br.seq, from, to, p, k);
    }

    // ---- stage (i): offside vertices ------------------------------------

    struct Ctx {
        const Tournament *tt;
        Bits A, B, RA;
        Side a_label; // which original side this context's A is
        bool reversed;
    };

    Ctx fwd_ctx() const { return Ctx{&t, sp.a, sp.b, sp.r_a, Side::a, false}; }
    Ctx rev_ctx() const { return Ctx{&trev, sp.b, sp.a, sp.r_b, Side::b, true}; }

    std::optional<Bridge> case1(const Ctx &cx, int v, std::string *why) {
        const Tournament &ct = *cx.tt;
        double d = sp.d_param;
        if (ct.out[v].intersect_count(cx.A | cx.RA) <= d) {
            *why = "degree";
            return std::nullopt;
        }
        Bits af = cx.A;
        af.andnot(fset);
        Bits bf = cx.B;
        bf.andnot(fset);
        Bits npl_a = ct.out[v] & af;
        Bits nmi = ct.in[v] & af;
        std::vector<int> seq_ctx;
        Side from_ctx = cx.a_label, to_ctx = cx.a_label;

        if (npl_a.count() > d / 4) { // case 1a: 2k+1 bridge inside A
            KsetGoal hg;
            hg.k = k;
            hg.out_ground = &af;
            hg.out_floor = anchor_thr(cx.A);
            hg.in_ground = &nmi;
            hg.in_floor = k;
            auto head = find_transitive_kset(ct, npl_a, hg);
            if (!head) {
                *why = "1a:head";
                return std::nullopt;
            }
            Bits tail_pool = head->in_witness; // common in-neighbors inside nmi
            KsetGoal tg;
            tg.k = k;
            tg.in_ground = &af;
            tg.in_floor = anchor_thr(cx.A);
            auto tail = find_transitive_kset(ct, tail_pool, tg);
            if (!tail) {
                *why = "1a:tail";
                return std::nullopt;
            }
            seq_ctx = tail->order;
            seq_ctx.push_back(v);
            seq_ctx.insert(seq_ctx.end(), head->order.begin(), head->order.end());
        } else {
            Bits raf = cx.RA;
            raf.andnot(fset);
            Bits npl_r = ct.out[v] & raf;
            if (npl_r.count() <= d / 4) {
                *why = "degree-split";
                return std::nullopt;
            }
            Bits abf = af | bf;
            KsetGoal g2;
            g2.k = k;
            g2.out_ground = &abf;
            g2.out_floor = thr(cx.A | cx.B);
            g2.in_ground = &nmi;
            g2.in_floor = k;
            auto s2 = find_transitive_kset(ct, npl_r, g2);
            if (!s2) {
                *why = "1b:s2";
                return std::nullopt;
            }
            KsetGoal tg;
            tg.k = k;
            tg.in_ground = &af;
            tg.in_floor = anchor_thr(cx.A);
            auto s1 = find_transitive_kset(ct, s2->in_witness, tg);
            if (!s1) {
                *why = "1b:s1";
                return std::nullopt;
            }
            // S3: an A-head inside A\F or a B-head inside B\F
            Bits pool_a = s2->out_witness & af;
            KsetGoal ga;
            ga.k = k;
            ga.out_ground = &af;
            ga.out_floor = anchor_thr(cx.A);
            auto s3 = find_transitive_kset(ct, pool_a, ga);
            to_ctx = cx.a_label;
            if (!s3) {
                Bits pool_b = s2->out_witness & bf;
                KsetGoal gb;
                gb.k = k;
                gb.out_ground = &bf;
                gb.out_floor = anchor_thr(cx.B);
                s3 = find_transitive_kset(ct, pool_b, gb);
                to_ctx = cx.a_label == Side::a ? Side::b : Side::a;
            }
            if (!s3) {
                *why = "1b:s3";
                return std::nullopt;
            }
            seq_ctx = s1->order;
            seq_ctx.push_back(v);
            seq_ctx.insert(seq_ctx.end(), s2->order.begin(), s2->order.end());
            seq_ctx.insert(seq_ctx.end(), s3->order.begin(), s3->order.end());
        }

        Bridge br;
        if (!cx.reversed) {
            br.seq = seq_ctx;
            br.from_side = from_ctx;
            br.to_side = to_ctx;
        } else {
            br.seq.assign(seq_ctx.rbegin(), seq_ctx.rend());
            br.from_side = to_ctx;
            br.to_side = from_ctx;
        }
        if (!validate_bridge(br)) {
            *why = "validate";
            return std::nullopt;
        }
        return br;
    }

    bool cover_offside(std::string *fail) {
        Bits off = sp.res_a | sp.res_b;
        off.andnot(sp.r_good);
        std::vector<int> vs = off.to_vector();
        for (int v : vs) {
            if (covered.test(v)) continue;
            std::vector<Ctx> order = sp.res_a.test(v) ? std::vector<Ctx>{fwd_ctx(), rev_ctx()}
                                                      : std::vector<Ctx>{rev_ctx(), fwd_ctx()};
            bool done = false;
            std::string why1, why2;
            for (const Ctx &cx : order) {
                auto br = case1(cx, v, why1.empty() ? &why1 : &why2);
                if (br) {
                    reserve(*br);
                    done = true;
                    break;
                }
            }
            if (!done) {
                *fail = "OffsideCoverFailed(" + std::to_string(v) + ", " + why1 + "/" + why2 +
                        ")";
                return false;
            }
        }
        return true;
    }

    // ---- stage (ii): A->B bridges through R_good -------------------------

    std::optional<std::vector<int>> random_anchor(const Bits &pool, const Bits &ground,
                                                  HeadTail kind, int tries, double floor) {
        std::vector<int> pv = pool.to_vector();
        if ((int)pv.size() < k) return std::nullopt;
        for (int i = 0; i < tries; ++i) {
            std::vector<int> pick;
            Bits used(t.n);
            while ((int)pick.size() < k) {
                int v = pv[rng_below(rng, (int)pv.size())];
                if (used.test(v)) continue;
                used.set(v);
                pick.push_back(v);
            }
            auto ord = transitive_order(t, pick);
            if (!ord) continue;
            auto ht = head_tail_check(t, *ord, ground, kind, p, k);
            if (ht.ok && (double)ht.witness.count() >= floor) return ord;
        }
        return std::nullopt;
    }

    // split the uncovered good vertices into transitive blocks (each block
    // rides inside one A->B bridge between the crossing halves)
    std::vector<std::vector<int>> good_blocks() const {
        std::vector<std::vector<int>> blocks;
        Bits left(t.n);
        sp.r_good.for_each([&](int v) {
            if (!covered.test(v)) left.set(v);
        });
        while (left.any()) {
            std::vector<int> ids;
            Tournament sub = t.induced(left, &ids);
            VertexSeq best;
            for (int sz = sub.n; sz >= 1 && best.empty(); --sz) {
                try {
                    best = find_transitive_set(sub, sz);
                } catch (const Error &) {
                }
            }
            std::vector<int> block;
            for (int v : best) block.push_back(ids[v]);
            blocks.push_back(block);
            for (int v : block) left.reset(v);
        }
        return blocks;
    }

    bool cover_good(std::string *fail) {
        std::vector<std::vector<int>> blocks = good_blocks();
        std::vector<int> good;
        for (auto &b : blocks) good.insert(good.end(), b.begin(), b.end());
        int natural_ba = (int)sp.chains_bad.size() + (sp.res_bad & covered.complement()).count();
        int need = std::max({1, natural_ba, (int)blocks.size()});

        Bits xp = sp.x, yp = sp.y;
        xp.andnot(fset);
        yp.andnot(fset);
        // keep the chained remainder out of the crossing pools
        for (int v : sp.pi) {
            xp.reset(v);
            yp.reset(v);
        }
        for (int v : good) {
            xp &= t.in[v];
            yp &= t.out[v];
        }

        for (int j = 0; j < need; ++j) {
            bool made = false;
            for (int attempt = 0; attempt < 64 && !made; ++attempt) {
                Bits af = sp.a, bf = sp.b;
                af.andnot(fset);
                bf.andnot(fset);
                auto s1 = random_anchor(af, sp.a, HeadTail::tail, 8, anchor_thr(sp.a));
                auto s2 = random_anchor(bf, sp.b, HeadTail::head, 8, anchor_thr(sp.b));
                if (!s1 || !s2) continue;
                Bits x1 = common_out(t, *s1, xp);
                x1.andnot(fset);
                Bits y1 = common_in(t, *s2, yp);
                y1.andnot(fset);
                if (x1.count() < k || y1.count() < k) continue;
                CrossingResult cr;
                try {
                    cr = find_crossing_power(t, x1, y1, p);
                } catch (const Error &) {
                    continue;
                }
                Bridge br;
                br.seq = *s1;
                br.seq.insert(br.seq.end(), cr.seq.begin(), cr.seq.begin() + k);
                if (j < (int)blocks.size())
                    br.seq.insert(br.seq.end(), blocks[j].begin(), blocks[j].end());
                br.seq.insert(br.seq.end(), cr.seq.begin() + k, cr.seq.end());
                br.seq.insert(br.seq.end(), s2->begin(), s2->end());
                br.from_side = Side::a;
                br.to_side = Side::b;
                if (!validate_bridge(br)) continue;
                reserve(br);
                made = true;
            }
            if (!made) {
                *fail = "GoodCoverFailed(bridge " + std::to_string(j) + " of " +
                        std::to_string(need) + ")";
                return false;
            }
        }
        return true;
    }

    // ---- stage (iii): extensions, bad residual, balancing ----------------

    std::optional<std::vector<int>> anchored_kset(const Bits &pool, const Bits &ground,
                                                  HeadTail kind) {
        KsetGoal g;
        g.k = k;
        Bits gr = ground;
        gr.andnot(fset);
        if (kind == HeadTail::head) {
            g.out_ground = &gr;
            g.out_floor = anchor_thr(ground);
        } else {
            g.in_ground = &gr;
            g.in_floor = anchor_thr(ground);
        }
        auto r = find_transitive_kset(t, pool, g);
        if (!r) return std::nullopt;
        return r->order;
    }

    bool extend_chain(const Chain &c, const std::vector<std::vector<int>> &donated, int order,
                      bool from_a_pool, bool to_b_pool, bool is_bad, std::string *fail) {
        VertexSeq q = c.seq;
        if (!donated.empty()) {
            ApartCollection coll;
            coll.sets = donated;
            coll.ordering = c.seq;
            coll.radius = order;
            q = delete_sparse_sets(t, c.seq, coll, order, order - k);
        }
        if (q.empty()) return true; // fully absorbed by earlier bridges
        if ((int)q.size() < k) {
            *fail = "ExtensionFailed(chain too depleted)";
            return false;
        }
        std::vector<int> qfirst(q.begin(), q.begin() + std::min<size_t>(k, q.size()));
        std::vector<int> qlast(q.end() - std::min<size_t>(k, q.size()), q.end());

        Bits af = sp.a, bf = sp.b;
        af.andnot(fset);
        bf.andnot(fset);
        Side from, to;
        std::optional<std::vector<int>> v1, v2;
        if (is_bad) { // (B,A,k)-chain: extend to a B -> A bridge
            v1 = anchored_kset(common_in(t, qfirst, bf), sp.b, HeadTail::tail);
            v2 = anchored_kset(common_out(t, qlast, af), sp.a, HeadTail::head);
            from = Side::b;
            to = Side::a;
        } else {
            Bits pool1 = from_a_pool ? common_in(t, qfirst, af)
                                     : common_in(t, qfirst, af | bf);
            Bits pool2 = to_b_pool ? common_out(t, qlast, bf)
                                   : common_out(t, qlast, af | bf);
            if (from_a_pool) {
                v1 = anchored_kset(pool1, sp.a, HeadTail::tail);
                from = Side::a;
            } else { // anywhere but ending at B; prefer A then B for the tail
                v1 = anchored_kset(pool1 & af, sp.a, HeadTail::tail);
                from = Side::a;
                if (!v1) {
                    v1 = anchored_kset(pool1 & bf, sp.b, HeadTail::tail);
                    from = Side::b;
                }
            }
            if (to_b_pool) {
                v2 = anchored_kset(pool2, sp.b, HeadTail::head);
                to = Side::b;
            } else { // ending anywhere but not making it B -> A
                v2 = anchored_kset(pool2 & af, sp.a, HeadTail::head);
                to = Side::a;
                if (!v2) {
                    v2 = anchored_kset(pool2 & bf, sp.b, HeadTail::head);
                    to = Side::b;
                }
            }
            if (from == Side::b && to == Side::a) { // not allowed for these chains
                v2 = anchored_kset(pool2 & bf, sp.b, HeadTail::head);
                to = Side::b;
            }
        }
        if (!v1 || !v2) {
            *fail = "ExtensionFailed(anchors)";
            return false;
        }
        Bridge br;
        br.seq = *v1;
        br.seq.insert(br.seq.end(), q.begin(), q.end());
        br.seq.insert(br.seq.end(), v2->begin(), v2->end());
        br.from_side = from;
        br.to_side = to;
        if (!validate_bridge(br)) {
            *fail = "ExtensionFailed(validate)";
            return false;
        }
        reserve(br);
        return true;
    }

    std::optional<Bridge> ba_bridge(int middle, std::string *why) {
        Bits af = sp.a, bf = sp.b;
        af.andnot(fset);
        bf.andnot(fset);
        Bits bpool = middle >= 0 ? (t.in[middle] & bf) : bf;
        KsetGoal tg;
        tg.k = k;
        tg.in_ground = &bf;
        tg.in_floor = anchor_thr(sp.b);
        Bits apool_all = middle >= 0 ? (t.out[middle] & af) : af;
        tg.out_ground = &apool_all;
        tg.out_floor = k;
        auto sb = find_transitive_kset(t, bpool, tg);
        if (!sb) {
            *why = "BadResidualFailed(b-side)";
            return std::nullopt;
        }
        KsetGoal hg;
        hg.k = k;
        hg.out_ground = &af;
        hg.out_floor = anchor_thr(sp.a);
        auto sa = find_transitive_kset(t, sb->out_witness, hg);
        if (!sa) {
            *why = "BadResidualFailed(a-side)";
            return std::nullopt;
        }
        Bridge br;
        br.seq = sb->order;
        if (middle >= 0) br.seq.push_back(middle);
        br.seq.insert(br.seq.end(), sa->order.begin(), sa->order.end());
        br.from_side = Side::b;
        br.to_side = Side::a;
        if (!validate_bridge(br)) {
            *why = "BadResidualFailed(validate)";
            return std::nullopt;
        }
        return br;
    }

    bool complete(std::string *fail) {
        int heavy = p.is_strict() ? 10 * k : 3 * k;
        for (size_t i = 0; i < sp.chains_a.size(); ++i)
            if (!extend_chain(sp.chains_a[i], donated_a[i], heavy, true, false, false, fail))
                return false;
        for (size_t i = 0; i < sp.chains_b.size(); ++i)
            if (!extend_chain(sp.chains_b[i], donated_b[i], heavy, false, true, false, fail))
                return false;
        for (size_t i = 0; i < sp.chains_bad.size(); ++i)
            if (!extend_chain(sp.chains_bad[i], donated_bad[i], k, false, false, true, fail))
                return false;

        std::vector<int> bad_rest;
        sp.res_bad.for_each([&](int v) {
            if (!covered.test(v)) bad_rest.push_back(v);
        });
        for (int v : bad_rest) {
            std::string why;
            auto br = ba_bridge(v, &why);
            if (!br) {
                *fail = why;
                return false;
            }
            reserve(*br);
        }

        int t_extra = count_ab - count_ba;
        if (t_extra < 0) {
            *fail = "BalanceFailed(surplus B->A bridges)";
            return false;
        }
        for (int i = 0; i < t_extra; ++i) {
            std::string why;
            auto br = ba_bridge(-1, &why);
            if (!br) {
                *fail = "BalanceFailed(" + why + ")";
                return false;
            }
            reserve(*br);
        }
        if (count_ab != count_ba || count_ab < 1) {
            *fail = "BalanceFailed(counts " + std::to_string(count_ab) + " vs " +
                    std::to_string(count_ba) + ")";
            return false;
        }
        if (!covered.subset_of(fset) || !(sp.r == (covered & sp.r))) {
            Bits missing = sp.r;
            missing.andnot(covered);
            if (missing.any()) {
                *fail = "cover invariant violated: " + std::to_string(missing.count()) +
                        " remainder vertices uncovered";
                return false;
            }
        }
        return true;
    }
};

} // namespace

BridgeCover build_bridge_cover(const Tournament &t, const SidePartition &sp,
                               const ParameterProfile &p) {
    BridgeCover out;
    CoverState st(t, sp, p);
    std::string why;

    StageRecord s1{"offside-cover", "ok", "", {}};
    if (!st.cover_offside(&why)) {
        s1.status = "failed";
        s1.detail = why;
        out.stages.push_back(s1);
        out.failed = why;
        return out;
    }
    s1.margins.emplace_back("bridges", (double)st.bridges.size());
    out.stages.push_back(s1);

    StageRecord s2{"good-cover", "ok", "", {}};
    if (!st.cover_good(&why)) {
        s2.status = "failed";
        s2.detail = why;
        out.stages.push_back(s2);
        out.failed = why;
        return out;
    }
    s2.margins.emplace_back("bridges", (double)st.bridges.size());
    out.stages.push_back(s2);

    StageRecord s3{"completing", "ok", "", {}};
    if (!st.complete(&why)) {
        s3.status = "failed";
        s3.detail = why;
        out.stages.push_back(s3);
        out.failed = why;
        return out;
    }
    s3.margins.emplace_back("bridges", (double)st.bridges.size());
    s3.margins.emplace_back("count_ab", st.count_ab);
    s3.margins.emplace_back("count_ba", st.count_ba);
    out.stages.push_back(s3);

    out.ok = true;
    out.bridges = std::move(st.bridges);
    out.count_ab = st.count_ab;
    out.count_ba = st.count_ba;
    out.used = Bits(t.n);
    for (const Bridge &b : out.bridges)
        for (int v : b.seq) out.used.set(v);
    return out;
}

// ---------------------------------------------------------------------------
// assembly
// ---------------------------------------------------------------------------

namespace {

struct Segment {
    const VertexSeq *seq;
    bool in_a_next; // the link after this segment lives inside A
};

} // namespace

PipelineResult assemble_from_bridges(const Tournament &t, const SidePartition &sp,
                                     const std::vector<Bridge> &bridges,
                                     const ParameterProfile &p) {
    PipelineResult res;
    int k = p.k;
    std::vector<const Bridge *> ab, ba, aa, bb;
    Bits used(t.n);
    for (const Bridge &b : bridges) {
        for (int v : b.seq) used.set(v);
        if (b.from_side == Side::a && b.to_side == Side::b) ab.push_back(&b);
        else if (b.from_side == Side::b && b.to_side == Side::a) ba.push_back(&b);
        else if (b.from_side == Side::a) aa.push_back(&b);
        else bb.push_back(&b);
    }
    {
        StageRecord &st = res.stage("balance");
        st.margins.emplace_back("count_ab", (double)ab.size());
        st.margins.emplace_back("count_ba", (double)ba.size());
        if (ab.size() != ba.size() || ab.empty()) {
            st.status = "failed";
            st.detail = "BalanceFailed";
            res.failed_stage = "balance: BalanceFailed";
            return res;
        }
        Bits missing = sp.r;
        missing.andnot(used);
        if (missing.any()) {
            st.status = "failed";
            st.detail = "remainder not fully covered";
            res.failed_stage = "balance: cover incomplete";
            return res;
        }
    }

    int span_order = p.is_strict() ? 3 * k : 2 * k;
    Bits arem = sp.a, brem = sp.b;
    arem.andnot(used);
    brem.andnot(used);
    std::vector<int> leftover_a, leftover_b;
    auto ca = spanning_chain_in(t, arem, span_order, p, nullptr, &leftover_a);
    if (!ca) {
        res.stage("spanning-a").status = "failed";
        res.failed_stage = "spanning-a";
        return res;
    }
    auto cb = spanning_chain_in(t, brem, span_order, p, nullptr, &leftover_b);
    if (!cb) {
        res.stage("spanning-b").status = "failed";
        res.failed_stage = "spanning-b";
        return res;
    }
    res.stage("spanning").margins.emplace_back("a_len", (double)ca->seq.size());
    res.stages.back().margins.emplace_back("b_len", (double)cb->seq.size());
    res.stages.back().margins.emplace_back("leftover",
                                           (double)(leftover_a.size() + leftover_b.size()));

    // cyclic segment order; the link after each segment alternates sides per
    // the fixed pattern
    int l = (int)ab.size();
    std::vector<const VertexSeq *> segs;
    std::vector<bool> link_in_a; // link after segment i
    segs.push_back(&ca->seq);
    link_in_a.push_back(true); // C_A -> v_1
    for (int i = 0; i < l; ++i) {
        segs.push_back(&ab[i]->seq);
        link_in_a.push_back(false); // v_i -> (v_{l+i} or C_B)
        if (i + 1 < l) {
            segs.push_back(&ba[i]->seq);
            link_in_a.push_back(true); // v_{l+i} -> v_{i+1}
        }
    }
    segs.push_back(&cb->seq);
    link_in_a.push_back(false); // C_B -> (u_1 or v_2l)
    for (const Bridge *u : bb) {
        segs.push_back(&u->seq);
        link_in_a.push_back(false);
    }
    segs.push_back(&ba[l - 1]->seq);
    link_in_a.push_back(true); // v_2l -> (w_1 or C_A)
    for (const Bridge *w : aa) {
        segs.push_back(&w->seq);
        link_in_a.push_back(true);
    }

    // run the links
    Bits allowed_a = Bits::of(t.n, ca->seq), allowed_b = Bits::of(t.n, cb->seq);
    for (int i = 0; i < k; ++i) {
        allowed_a.reset(ca->seq[i]);
        allowed_a.reset(ca->seq[ca->seq.size() - 1 - i]);
        allowed_b.reset(cb->seq[i]);
        allowed_b.reset(cb->seq[cb->seq.size() - 1 - i]);
    }
    int radius_a = span_order, radius_b = span_order;
    std::vector<int> pos_a(t.n, -1), pos_b(t.n, -1);
    for (size_t i = 0; i < ca->seq.size(); ++i) pos_a[ca->seq[i]] = (int)i;
    for (size_t i = 0; i < cb->seq.size(); ++i) pos_b[cb->seq[i]] = (int)i;

    // absorb the spanning leftovers into the cores at the final power order;
    // the splice windows are hull-protected against link deletions
    std::vector<std::pair<int, int>> splices_a, splices_b; // (anchor vertex, w)
    auto absorb = [&](int w, const VertexSeq &core, Bits &allowed, const std::vector<int> &pos,
                      int radius, std::vector<std::pair<int, int>> &splices) {
        for (int p0 = k; p0 + k <= (int)core.size(); ++p0) {
            bool ok = true;
            for (int i = p0 - k; i < p0 + k && ok; ++i) ok = allowed.test(core[i]);
            for (int i = 1; i <= k && ok; ++i)
                ok = t.edge(core[p0 - i], w) && t.edge(w, core[p0 + i - 1]);
            if (!ok) continue;
            splices.emplace_back(core[p0 - 1], w);
            for (int i = p0 - k; i < p0 + k; ++i) allowed.reset(core[i]);
            (void)pos;
            (void)radius;
            return true;
        }
        return false;
    };
    for (int w : leftover_a)
        if (!absorb(w, ca->seq, allowed_a, pos_a, radius_a, splices_a)) {
            res.stage("absorb").status = "failed";
            res.failed_stage = "absorb: leftover " + std::to_string(w);
            return res;
        }
    for (int w : leftover_b)
        if (!absorb(w, cb->seq, allowed_b, pos_b, radius_b, splices_b)) {
            res.stage("absorb").status = "failed";
            res.failed_stage = "absorb: leftover " + std::to_string(w);
            return res;
        }

    std::vector<std::vector<int>> donated_from_a, donated_from_b;
    std::vector<Linkage> links(segs.size());

    StageRecord &lst = res.stage("links");
    for (size_t i = 0; i < segs.size(); ++i) {
        const VertexSeq &from = *segs[i];
        const VertexSeq &to = *segs[(i + 1) % segs.size()];
        bool in_a = link_in_a[i];
        LinkRequest req;
        req.m = VertexSeq(from.end() - k, from.end());
        req.n = VertexSeq(to.begin(), to.begin() + k);
        req.ordering = in_a ? &ca->seq : &cb->seq;
        req.radius = in_a ? radius_a : radius_b;
        req.blob_size = k;
        std::string why;
        auto lk = link_internal(t, in_a ? allowed_a : allowed_b, req, p, &why);
        if (!lk) {
            lst.status = "failed";
            lst.detail = "link " + std::to_string(i) + " (" + (in_a ? "A" : "B") + "): " + why;
            res.failed_stage = "links: " + lst.detail;
            return res;
        }
        for (const auto &blob : lk->internal_sets) {
            auto &donated = in_a ? donated_from_a : donated_from_b;
            auto &allowed = in_a ? allowed_a : allowed_b;
            const auto &pos = in_a ? pos_a : pos_b;
            const auto &pi = in_a ? ca->seq : cb->seq;
            donated.push_back(blob);
            for (int v : blob) {
                int lo = std::max(0, pos[v] - (in_a ? radius_a : radius_b));
                int hi = std::min((int)pi.size() - 1, pos[v] + (in_a ? radius_a : radius_b));
                for (int j = lo; j <= hi; ++j) allowed.reset(pi[j]);
            }
        }
        links[i] = std::move(*lk);
    }

    // delete link blobs from the spanning chains, splice the absorbed
    // leftovers back in, then stitch the cycle
    VertexSeq ca2 = ca->seq, cb2 = cb->seq;
    if (!donated_from_a.empty()) {
        ApartCollection coll{donated_from_a, ca->seq, radius_a};
        ca2 = delete_sparse_sets(t, ca->seq, coll, span_order, span_order - k);
    }
    if (!donated_from_b.empty()) {
        ApartCollection coll{donated_from_b, cb->seq, radius_b};
        cb2 = delete_sparse_sets(t, cb->seq, coll, span_order, span_order - k);
    }
    for (auto [anchor, w] : splices_a) {
        auto it = std::find(ca2.begin(), ca2.end(), anchor);
        if (it == ca2.end()) {
            res.stage("splice").status = "failed";
            res.failed_stage = "splice: anchor missing";
            return res;
        }
        ca2.insert(it + 1, w);
    }
    for (auto [anchor, w] : splices_b) {
        auto it = std::find(cb2.begin(), cb2.end(), anchor);
        if (it == cb2.end()) {
            res.stage("splice").status = "failed";
            res.failed_stage = "splice: anchor missing";
            return res;
        }
        cb2.insert(it + 1, w);
    }

    VertexSeq cycle;
    for (size_t i = 0; i < segs.size(); ++i) {
        const VertexSeq *s = segs[i];
        if (s == &ca->seq) cycle.insert(cycle.end(), ca2.begin(), ca2.end());
        else if (s == &cb->seq) cycle.insert(cycle.end(), cb2.begin(), cb2.end());
        else cycle.insert(cycle.end(), s->begin(), s->end());
        for (const auto &blob : links[i].internal_sets)
            cycle.insert(cycle.end(), blob.begin(), blob.end());
    }
    StageRecord &ast = res.stage("assemble");
    ast.margins.emplace_back("length", (double)cycle.size());
    if ((int)cycle.size() != t.n || !verify_power_seq(t, cycle, k, SeqKind::cycle)) {
        ast.status = "failed";
        ast.detail = "assembled cycle failed validation";
        res.failed_stage = "assemble: validation";
        return res;
    }
    res.found = true;
    res.witness = cycle;
    return res;
}

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

MainResult main_power_hamilton(const Tournament &t, int k, const ParameterProfile &p_in) {
    ParameterProfile p = p_in;
    p.k = k;
    MainResult mr;
    PipelineResult &res = mr.pipeline;
    int n = t.n;
    {
        StageRecord &st = res.stage("degree-condition");
        if (n >= 1) {
            double d0 = min_semidegree(t);
            st.margins.emplace_back("semidegree", d0);
            st.margins.emplace_back("n_over_4_margin", d0 - n / 4.0);
        }
    }
    if (n <= 14) {
        mr.branch = "oracle";
        SearchOutcome so = search_power_hamilton(t, k, SeqKind::cycle);
        mr.oracle_outcome = so;
        StageRecord &st = res.stage("oracle");
        st.detail = search_status_name(so.status);
        if (so.status == SearchStatus::found) {
            res.found = true;
            res.witness = *so.witness;
        } else {
            res.failed_stage = ""; // sound refutation or budget, not a staged failure
        }
        return mr;
    }

    CutWitness cut = (n <= 22) ? balanced_cut_density(t, CutMode::exact)
                               : balanced_cut_density(t, CutMode::heuristic,
                                                      SearchBudget::unlimited(), p.rng_seed, 22,
                                                      16);
    {
        StageRecord &st = res.stage("dispatch");
        st.margins.emplace_back("balanced_density", cut.density);
        st.margins.emplace_back("threshold", p.dispatch_density);
        st.detail = cut.density >= p.dispatch_density ? "dense" : "sparse";
    }
    bool dense_first = cut.density >= p.dispatch_density;

    auto run_dense = [&]() -> bool {
        PipelineResult pr = cut_dense_power_hamilton(t, p);
        for (auto &s : pr.stages) res.stages.push_back(s);
        if (pr.found) {
            res.found = true;
            res.witness = pr.witness;
            return true;
        }
        res.failed_stage = pr.failed_stage;
        return false;
    };
    auto run_sparse = [&]() -> bool {
        try {
            SidePartition sp = prepare_partition(t, p);
            sp = classify_remainder(t, sp, p);
            StageRecord &st = res.stage("classify");
            st.margins.emplace_back("r", (double)sp.r.count());
            st.margins.emplace_back("r_bad", (double)sp.r_bad.count());
            st.margins.emplace_back("r_good", (double)sp.r_good.count());
            BridgeCover bc = build_bridge_cover(t, sp, p);
            for (auto &s : bc.stages) res.stages.push_back(s);
            mr.bridge_cover = bc;
            if (!bc.ok) {
                res.failed_stage = bc.failed;
                return false;
            }
            PipelineResult pr = assemble_from_bridges(t, sp, bc.bridges, p);
            for (auto &s : pr.stages) res.stages.push_back(s);
            if (pr.found) {
                res.found = true;
                res.witness = pr.witness;
                return true;
            }
            res.failed_stage = pr.failed_stage;
            return false;
        } catch (const Error &e) {
            StageRecord &st = res.stage("sparse-branch");
            st.status = "failed";
            st.detail = e.what();
            res.failed_stage = std::string("sparse: ") + e.what();
            return false;
        }
    };

    if (dense_first) {
        mr.branch = "cut-dense";
        if (run_dense()) return mr;
        mr.branch = "cut-dense,bridge";
        if (run_sparse()) return mr;
    } else {
        mr.branch = "bridge";
        if (run_sparse()) return mr;
        mr.branch = "bridge,cut-dense";
        if (run_dense()) return mr;
    }
    return mr;
}

} // namespace powham

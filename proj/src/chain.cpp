#include "chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace powham {

namespace {

std::vector<int> position_map(const VertexSeq &pi, int n) {
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < pi.size(); ++i) pos[pi[i]] = (int)i;
    return pos;
}

Bits hull_bits(const std::vector<int> &set, const VertexSeq &pi, const std::vector<int> &pos,
               int radius, int n) {
    Bits h(n);
    for (int v : set) {
        h.set(v);
        if (pos[v] < 0) continue;
        int lo = std::max(0, pos[v] - radius);
        int hi = std::min((int)pi.size() - 1, pos[v] + radius);
        for (int j = lo; j <= hi; ++j) h.set(pi[j]);
    }
    return h;
}

} // namespace

// ---------------------------------------------------------------------------
// partitioning
// ---------------------------------------------------------------------------

PartitionResult partition_chains_at_order(const Tournament &t, const Bits &s, const Bits &a,
                                          const Bits &b, const ParameterProfile &p, int order,
                                          uint64_t seed) {
    PartitionResult res;
    res.residual = s;
    double cap = p.residual_cap();
    if ((double)s.count() <= cap) return res; // trivial branch: everything residual

    std::vector<int> ladder;
    if (p.is_strict()) {
        ladder = {20 * order};
    } else {
        // extraction at the chain order itself yields the longest paths;
        // higher orders only buy trimming freedom
        ladder = {order, std::min(2 * order, order + 2)};
        ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    }

    Bits pool = s;
    Rng rng = make_rng(seed);
    // slide-trim an extracted power path into an (a,b,order)-chain, dropping
    // as few end vertices as the head/tail thresholds force
    auto trim_to_chain = [&](const VertexSeq &path) -> std::optional<Chain> {
        int len = (int)path.size();
        int cap_slide = std::min(3 * order, (len - 2 * order) / 2);
        int sf = -1, sb = -1;
        Bits tail_w(t.n), head_w(t.n);
        for (int s0 = 0; s0 <= cap_slide && sf < 0; ++s0) {
            std::vector<int> win(path.begin() + s0, path.begin() + s0 + order);
            auto r = head_tail_check(t, win, a, HeadTail::tail, p, order);
            if (r.ok) {
                sf = s0;
                tail_w = r.witness;
            }
        }
        for (int s0 = 0; s0 <= cap_slide && sb < 0; ++s0) {
            std::vector<int> win(path.end() - s0 - order, path.end() - s0);
            auto r = head_tail_check(t, win, b, HeadTail::head, p, order);
            if (r.ok) {
                sb = s0;
                head_w = r.witness;
            }
        }
        if (sf < 0 || sb < 0) return std::nullopt;
        VertexSeq trimmed(path.begin() + sf, path.end() - sb);
        if ((int)trimmed.size() < 2 * order) return std::nullopt;
        if (!chain_check(t, trimmed, a, b, p, order)) return std::nullopt;
        Chain c;
        c.seq = std::move(trimmed);
        c.order = order;
        c.tail_ground = a;
        c.head_ground = b;
        c.tail_witness = tail_w;
        c.head_witness = head_w;
        return c;
    };

    while ((double)pool.count() > cap) {
        std::optional<Chain> best;
        for (int attempt = 0; attempt < 3 && !best; ++attempt) {
            for (int ext : ladder) {
                if (2 * ext > pool.count()) continue;
                VertexSeq path = find_long_power_path_in(
                    t, ext, pool, SearchBudget::nodes(400 * (uint64_t)pool.count()), rng());
                if ((int)path.size() < 3 * order) continue;
                auto c = trim_to_chain(path);
                if (c && (!best || c->seq.size() > best->seq.size())) best = c;
            }
        }
        if (!best) {
            res.stalled = true;
            res.stall_detail = "no chain extractable from a pool of " +
                               std::to_string(pool.count()) + " vertices (cap " +
                               std::to_string((long long)cap) + ")";
            break;
        }
        for (int v : best->seq) pool.reset(v);
        res.chains.push_back(std::move(*best));
    }
    res.residual = pool;
    return res;
}

PartitionResult partition_into_chains(const Tournament &t, const Bits &s, const Bits &a,
                                      const Bits &b, const ParameterProfile &p) {
    if (p.is_strict()) {
        // the partition lemma's degree hypothesis
        double ta = a.count() / 20.0, tb = b.count() / 20.0;
        bool ok = true;
        s.for_each([&](int v) {
            if (t.in[v].intersect_count(a) < ta || t.out[v].intersect_count(b) < tb) ok = false;
        });
        require(ok, Errc::precondition_failed,
                "some vertex of s lacks the |A|/20 in- or |B|/20 out-neighbors");
    }
    PartitionResult r = partition_chains_at_order(t, s, a, b, p, p.k, p.rng_seed);
    require(!r.stalled, Errc::precondition_failed, "ExtractionStalled: " + r.stall_detail);
    return r;
}

// ---------------------------------------------------------------------------
// linking
// ---------------------------------------------------------------------------

namespace {

// consecutive k-window of `pi` fully inside pool, meeting the goal floors;
// falls back to a general transitive k-set search
std::optional<KsetFound> pick_blob(const Tournament &t, const Bits &pool, const KsetGoal &goal,
                                   const VertexSeq &pi, const std::vector<int> &pos) {
    int k = goal.k;
    for (int p0 = 0; p0 + k <= (int)pi.size(); ++p0) {
        bool in_pool = true;
        for (int i = 0; i < k && in_pool; ++i) in_pool = pool.test(pi[p0 + i]);
        if (!in_pool) continue;
        std::vector<int> w(pi.begin() + p0, pi.begin() + p0 + k);
        if (!is_transitive_set(t, w)) continue;
        if (transitive_order(t, w).value() != w) continue; // must keep pi order
        KsetFound f;
        f.order = w;
        f.in_witness = goal.in_ground ? common_in(t, w, *goal.in_ground) : Bits(t.n);
        f.out_witness = goal.out_ground ? common_out(t, w, *goal.out_ground) : Bits(t.n);
        if (goal.in_ground && f.in_witness.count() < goal.in_floor) continue;
        if (goal.out_ground && f.out_witness.count() < goal.out_floor) continue;
        return f;
    }
    return find_transitive_kset(t, pool, goal);
}

struct LayerSide {
    std::vector<Bits> layers; // layers[0] unused; layers[i] = i-th layer
    Bits cum;
};

LayerSide grow_layers(const Tournament &t, const Bits &seed_layer, const Bits &universe,
                      bool in_direction, double c, int max_layers) {
    LayerSide side;
    side.layers.push_back(Bits(seed_layer.universe())); // index 0 placeholder
    side.layers.push_back(seed_layer);
    side.cum = seed_layer;
    int target = (int)(0.45 * universe.count());
    for (int i = 2; i <= max_layers && side.cum.count() < target; ++i) {
        Bits next(seed_layer.universe());
        double need = c * side.cum.count();
        Bits candidates = universe;
        candidates.andnot(side.cum);
        candidates.for_each([&](int x) {
            const Bits &row = in_direction ? t.in[x] : t.out[x];
            if (row.intersect_count(side.cum) >= need) next.set(x);
        });
        if (next.none()) break;
        side.layers.push_back(next);
        side.cum |= next;
    }
    return side;
}

struct CascadeBuilder {
    const Tournament &t;
    const ParameterProfile &p;
    const LinkRequest &req;
    const std::vector<int> &pos;
    int k;
    Bits localf;

    CascadeBuilder(const Tournament &t_, const ParameterProfile &p_, const LinkRequest &r,
                   const std::vector<int> &pos_)
        : t(t_), p(p_), req(r), pos(pos_), k(r.blob_size), localf(t_.n) {}

    Bits avail(const Bits &pool) const {
        Bits b = pool;
        b.andnot(localf);
        return b;
    }

    void reserve(const std::vector<int> &set) {
        localf |= hull_bits(set, *req.ordering, pos, req.radius, t.n);
    }

    // Z at the meeting point, then the X-cascade back toward M and the
    // Y-cascade toward N. k_pools/l_pools are ordered from Z outward.
    std::optional<Linkage> build(const Bits &z_pool, const std::vector<Bits> &k_pools,
                                 const std::vector<Bits> &l_pools, std::string *fail_stage) {
        localf.clear();
        KsetGoal zgoal;
        zgoal.k = k;
        Bits kp0, lp0;
        if (!k_pools.empty()) {
            kp0 = k_pools[0];
            zgoal.in_ground = &kp0;
            zgoal.in_floor = k;
        }
        if (!l_pools.empty()) {
            lp0 = l_pools[0];
            zgoal.out_ground = &lp0;
            zgoal.out_floor = k;
        }
        auto z = pick_blob(t, avail(z_pool), zgoal, *req.ordering, pos);
        if (!z) {
            if (fail_stage) *fail_stage = "pick-z";
            return std::nullopt;
        }
        reserve(z->order);

        std::vector<std::vector<int>> xs; // X_1 .. X_{|k_pools|}, from Z toward M
        std::vector<int> prev = z->order;
        for (size_t j = 0; j < k_pools.size(); ++j) {
            Bits pool = avail(k_pools[j]) & common_in(t, prev, Bits::full(t.n));
            KsetGoal g;
            g.k = k;
            Bits nextp;
            if (j + 1 < k_pools.size()) {
                nextp = k_pools[j + 1];
                nextp.andnot(localf);
                g.in_ground = &nextp;
                g.in_floor = k;
            }
            auto x = pick_blob(t, pool, g, *req.ordering, pos);
            if (!x) {
                if (fail_stage) *fail_stage = "pick-x" + std::to_string(j + 1);
                return std::nullopt;
            }
            reserve(x->order);
            xs.push_back(x->order);
            prev = x->order;
        }
        std::vector<std::vector<int>> ys;
        prev = z->order;
        for (size_t j = 0; j < l_pools.size(); ++j) {
            Bits pool = avail(l_pools[j]) & common_out(t, prev, Bits::full(t.n));
            KsetGoal g;
            g.k = k;
            Bits nextp;
            if (j + 1 < l_pools.size()) {
                nextp = l_pools[j + 1];
                nextp.andnot(localf);
                g.out_ground = &nextp;
                g.out_floor = k;
            }
            auto y = pick_blob(t, pool, g, *req.ordering, pos);
            if (!y) {
                if (fail_stage) *fail_stage = "pick-y" + std::to_string(j + 1);
                return std::nullopt;
            }
            reserve(y->order);
            ys.push_back(y->order);
            prev = y->order;
        }

        Linkage link;
        link.path = req.m;
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
            link.internal_sets.push_back(*it);
            link.path.insert(link.path.end(), it->begin(), it->end());
        }
        link.internal_sets.push_back(z->order);
        link.path.insert(link.path.end(), z->order.begin(), z->order.end());
        for (const auto &y : ys) {
            link.internal_sets.push_back(y);
            link.path.insert(link.path.end(), y.begin(), y.end());
        }
        link.path.insert(link.path.end(), req.n.begin(), req.n.end());
        if (!verify_power_seq(t, link.path, k, SeqKind::path)) {
            if (fail_stage) *fail_stage = "cascade-validate";
            return std::nullopt;
        }
        return link;
    }
};

} // namespace

std::optional<Linkage> link_internal(const Tournament &t, const Bits &allowed,
                                     const LinkRequest &req, const ParameterProfile &p,
                                     std::string *fail_stage) {
    int k = req.blob_size;
    std::vector<int> pos = position_map(*req.ordering, t.n);
    Bits u = allowed;
    for (int v : req.m) u.reset(v);
    for (int v : req.n) u.reset(v);

    Bits m1 = common_out(t, req.m, u);
    Bits n1 = common_in(t, req.n, u);
    // below k nothing can work; between k and the profile floor the layered
    // search decides for itself
    if (m1.count() < k || n1.count() < k) {
        if (fail_stage)
            *fail_stage = "neighborhood-floor (|N+(M)|=" + std::to_string(m1.count()) +
                          ", |N-(N)|=" + std::to_string(n1.count()) + ")";
        return std::nullopt;
    }

    double c = p.is_strict() ? p.delta / 100.0 : 0.25;
    int max_layers = std::max(4, (int)std::ceil(std::log2(std::max(4, t.n))));
    LayerSide mside = grow_layers(t, m1, u, true, c, max_layers);
    LayerSide nside = grow_layers(t, n1, u, false, c, max_layers);
    int lm = (int)mside.layers.size() - 1, ln = (int)nside.layers.size() - 1;

    double case_threshold =
        p.is_strict() ? std::pow((double)t.n, 0.25) : (double)std::max(k, p.desk_floor / 2);

    CascadeBuilder builder(t, p, req, pos);
    std::string stage;

    // Case 1: some pair of layers intersects substantially; smallest i1+i2 first
    for (int s = 2; s <= lm + ln; ++s) {
        for (int i1 = std::max(1, s - ln); i1 <= std::min(s - 1, lm); ++i1) {
            int i2 = s - i1;
            Bits inter = mside.layers[i1] & nside.layers[i2];
            if ((double)inter.count() < std::max((double)k, case_threshold)) continue;
            // K_j = M_j minus the N side, L_j symmetric
            std::vector<Bits> k_pools, l_pools;
            bool ok = true;
            for (int j = i1 - 1; j >= 1; --j) {
                Bits kp = mside.layers[j];
                kp.andnot(nside.cum);
                if (kp.count() < k) ok = false;
                k_pools.push_back(kp);
            }
            for (int j = i2 - 1; j >= 1; --j) {
                Bits lp = nside.layers[j];
                lp.andnot(mside.cum);
                if (lp.count() < k) ok = false;
                l_pools.push_back(lp);
            }
            if (!ok) continue;
            auto linkage = builder.build(inter, k_pools, l_pools, &stage);
            if (linkage) return linkage;
        }
    }

    // Case 2: all intersections small; find a dense forward pair (K_i, L_j)
    {
        std::vector<Bits> kk(lm + 1, Bits(t.n)), ll(ln + 1, Bits(t.n));
        for (int i = 1; i <= lm; ++i) {
            kk[i] = mside.layers[i];
            kk[i].andnot(nside.cum);
        }
        for (int j = 1; j <= ln; ++j) {
            ll[j] = nside.layers[j];
            ll[j].andnot(mside.cum);
        }
        double best = -1;
        int bi = 0, bj = 0;
        for (int i = 1; i <= lm; ++i)
            for (int j = 1; j <= ln; ++j) {
                if (kk[i].count() < k || ll[j].count() < k) continue;
                long long e = 0;
                kk[i].for_each([&](int x) { e += t.out[x].intersect_count(ll[j]); });
                double d = (double)e / ((double)kk[i].count() * ll[j].count());
                if (d > best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        if (best >= 0) {
            std::vector<Bits> k_pools, l_pools;
            for (int j = bi - 1; j >= 1; --j) k_pools.push_back(kk[j]);
            for (int j = bj; j >= 1; --j) l_pools.push_back(ll[j]);
            auto linkage = builder.build(kk[bi], k_pools, l_pools, &stage);
            if (linkage) return linkage;
            if (fail_stage) *fail_stage = "case2: " + stage;
            return std::nullopt;
        }
    }
    if (fail_stage) *fail_stage = stage.empty() ? "layering-collapsed" : "case1: " + stage;
    return std::nullopt;
}

Linkage link(const Tournament &t, const std::vector<int> &m, const std::vector<int> &nset,
             const VertexSeq &ordering, const Bits &forbidden, const ParameterProfile &p) {
    require((int)m.size() == p.k && (int)nset.size() == p.k, Errc::wrong_size,
            "m and n must be k-sets");
    LinkRequest req;
    req.m = m;
    req.n = nset;
    req.ordering = &ordering;
    req.radius = p.apart_radius;
    req.blob_size = p.k;
    Bits allowed = Bits::of(t.n, ordering);
    allowed.andnot(forbidden);
    std::string stage;
    auto r = link_internal(t, allowed, req, p, &stage);
    if (r) {
        require(apartness(r->internal_sets, ordering, req.radius), Errc::invariant_violation,
                "link blobs are not radius-apart");
        return *r;
    }
    if (stage.find("layering") != std::string::npos) fail(Errc::precondition_failed,
                                                          "LayeringCollapsed: " + stage);
    fail(Errc::not_found, "CaseSplitFailed: " + stage);
}

// ---------------------------------------------------------------------------
// pipeline engine
// ---------------------------------------------------------------------------

namespace {

struct Engine {
    const Tournament &t;
    ParameterProfile p;
    int k;     // link/end size
    int order; // chain power order
    Bits universe;
    uint64_t seed;
    int radius;

    std::vector<Chain> chains;
    size_t npart = 0;
    Bits residual;
    VertexSeq pi;
    std::vector<int> pos;
    std::vector<int> chain_of; // vertex -> home chain, -1 outside
    Bits allowed;
    std::vector<std::vector<std::vector<int>>> donated; // per partition chain
    std::vector<Linkage> links;
    std::vector<std::vector<int>> ledger_sets; // all placed sets (apartness)
    struct Insertion {
        int chain;
        int anchor; // vertex after which w is spliced
        int w;
    };
    std::vector<Insertion> insertions;
    bool allow_skip = false;   // open mode: park unabsorbable residual vertices
    std::vector<int> skipped;
    PipelineResult *trace;

    Engine(const Tournament &t_, const ParameterProfile &p_, int k_, const Bits &uni,
           uint64_t seed_, PipelineResult *tr)
        : t(t_), p(p_), k(k_), order(p_.chain_order_factor * k_), universe(uni), seed(seed_),
          radius(p_.chain_order_factor * k_), residual(t_.n), allowed(t_.n), trace(tr) {}

    bool fail_stage(const std::string &name, const std::string &detail) {
        StageRecord &st = trace->stage(name);
        st.status = "failed";
        st.detail = detail;
        trace->failed_stage = name + ": " + detail;
        return false;
    }

    void reserve(const std::vector<int> &set) {
        allowed.andnot(hull_bits(set, pi, pos, radius, t.n));
        ledger_sets.push_back(set);
    }

    bool ledger_consistent() const { return apartness(ledger_sets, pi, radius); }

    bool partition_stage() {
        PartitionResult pr =
            partition_chains_at_order(t, universe, universe, universe, p, order, seed);
        StageRecord &st = trace->stage("partition");
        st.margins.emplace_back("chains", (double)pr.chains.size());
        st.margins.emplace_back("residual", (double)pr.residual.count());
        if (pr.stalled) return fail_stage("partition", pr.stall_detail);
        if (pr.chains.empty())
            return fail_stage("partition", "no chains (universe of " +
                                               std::to_string(universe.count()) + ")");
        chains = std::move(pr.chains);
        npart = chains.size();
        residual = pr.residual;
        donated.assign(npart, {});

        pi.clear();
        chain_of.assign(t.n, -1);
        for (size_t ci = 0; ci < chains.size(); ++ci)
            for (int v : chains[ci].seq) {
                pi.push_back(v);
                chain_of[v] = (int)ci;
            }
        pos = position_map(pi, t.n);
        allowed = Bits::of(t.n, pi);
        for (const Chain &c : chains) {
            for (int v : c.first(k)) allowed.reset(v);
            for (int v : c.last(k)) allowed.reset(v);
        }
        return true;
    }

    // positions ordered middle-out, keeping the regions near the chain ends
    // (which the links' wrap neighborhoods need) free as long as possible
    std::vector<int> center_out(int count) const {
        std::vector<int> order;
        int mid = count / 2;
        for (int d = 0; d <= mid; ++d) {
            if (mid - d >= 0) order.push_back(mid - d);
            if (d > 0 && mid + d < count) order.push_back(mid + d);
        }
        return order;
    }

    // consecutive k-windows of pi inside `member` and allowed, middle-out
    std::vector<int> window_starts(const Bits &member) const {
        std::vector<int> starts;
        for (int p0 : center_out((int)pi.size() - k + 1)) {
            bool ok = chain_of[pi[p0]] == chain_of[pi[p0 + k - 1]];
            for (int i = 0; i < k && ok; ++i) {
                int v = pi[p0 + i];
                ok = allowed.test(v) && member.test(v);
            }
            if (ok) starts.push_back(p0);
        }
        return starts;
    }

    bool cover_stage() {
        StageRecord &st = trace->stage("cover");
        st.margins.emplace_back("residual", (double)residual.count());
        std::vector<int> rest = residual.to_vector();
        for (int w : rest) {
            if (!cover_one(w)) {
                if (allow_skip) {
                    skipped.push_back(w);
                    residual.reset(w);
                    universe.reset(w);
                    continue;
                }
                return fail_stage("cover", "CoverFailed(" + std::to_string(w) + ")");
            }
        }
        if (!skipped.empty())
            st.margins.emplace_back("skipped", (double)skipped.size());
        return true;
    }

    bool cover_one(int w) {
        // absorbing w into a chain costs far less forbidden-hull capacity
        // than a standalone cover chain (which also adds a link)
        if (!p.is_strict() && insert_one(w)) return true;
        std::vector<int> xs = window_starts(t.in[w]);
        std::vector<int> ys = window_starts(t.out[w]);
        for (int px : xs) {
            std::vector<int> x(pi.begin() + px, pi.begin() + px + k);
            if (transitive_order(t, x) != std::optional<VertexSeq>(x)) continue;
            auto tail = head_tail_check(t, x, universe, HeadTail::tail, p, k);
            if (!tail.ok) continue;
            Bits xout = common_out(t, x, Bits::full(t.n));
            for (int py : ys) {
                if (std::abs(py - px) <= radius + k - 1) continue;
                std::vector<int> y(pi.begin() + py, pi.begin() + py + k);
                bool dom = true;
                for (int yv : y) dom = dom && xout.test(yv);
                if (!dom) continue;
                if (transitive_order(t, y) != std::optional<VertexSeq>(y)) continue;
                auto head = head_tail_check(t, y, universe, HeadTail::head, p, k);
                if (!head.ok) continue;

                Chain cover;
                cover.seq = x;
                cover.seq.push_back(w);
                cover.seq.insert(cover.seq.end(), y.begin(), y.end());
                cover.order = k;
                cover.tail_ground = universe;
                cover.head_ground = universe;
                cover.tail_witness = tail.witness;
                cover.head_witness = head.witness;
                if (!chain_check(t, cover.seq, universe, universe, p, k)) continue;

                donated[chain_of[x[0]]].push_back(x);
                donated[chain_of[y[0]]].push_back(y);
                reserve(x);
                reserve(y);
                chains.push_back(std::move(cover));
                residual.reset(w);
                return true;
            }
        }
        return insert_one(w);
    }

    // splice w into a chain between positions p-1 and p: the previous k
    // vertices must dominate w and w must dominate the next k; the 2k-window
    // is then hull-protected so later deletions keep the splice intact
    bool insert_one(int w) {
        for (int p0 = k; p0 + k <= (int)pi.size(); ++p0) {
            int ci = chain_of[pi[p0]];
            if (ci != chain_of[pi[p0 - k]] || ci != chain_of[pi[p0 + k - 1]]) continue;
            if (ci >= (int)npart) continue;
            bool ok = true;
            for (int i = p0 - k; i < p0 + k && ok; ++i) ok = allowed.test(pi[i]);
            for (int i = 1; i <= k && ok; ++i)
                ok = t.edge(pi[p0 - i], w) && t.edge(w, pi[p0 + i - 1]);
            if (!ok) continue;
            insertions.push_back({ci, pi[p0 - 1], w});
            // only the splice window itself needs protection from deletions;
            // deletions beyond it never put w into a foreign k-window
            for (int i = p0 - k; i < p0 + k; ++i) allowed.reset(pi[i]);
            residual.reset(w);
            return true;
        }
        return false;
    }

    bool link_stage(bool closed) {
        StageRecord &st = trace->stage("link");
        size_t total = chains.size();
        size_t nlinks = closed ? total : total - 1;
        double max_blobs = 0;
        for (size_t i = 0; i < nlinks; ++i) {
            const Chain &from = chains[i];
            const Chain &to = chains[(i + 1) % total];
            LinkRequest req;
            req.m = from.last(k);
            req.n = to.first(k);
            req.ordering = &pi;
            req.radius = radius;
            req.blob_size = k;
            std::string why;
            auto linkage = link_internal(t, allowed, req, p, &why);
            if (!linkage)
                return fail_stage("link", "link " + std::to_string(i) + " failed: " + why);
            for (const auto &blob : linkage->internal_sets) {
                // split the blob by home chain for the deletion bookkeeping
                std::vector<std::vector<int>> by_chain;
                for (int v : blob) {
                    int c = chain_of[v];
                    bool put = false;
                    for (auto &g : by_chain)
                        if (chain_of[g[0]] == c) {
                            g.push_back(v);
                            put = true;
                        }
                    if (!put) by_chain.push_back({v});
                }
                for (auto &g : by_chain) donated[chain_of[g[0]]].push_back(g);
                reserve(blob);
            }
            max_blobs = std::max(max_blobs, (double)linkage->internal_sets.size());
            links.push_back(std::move(*linkage));
        }
        st.margins.emplace_back("max_blobs", max_blobs);
        st.margins.emplace_back("log2_n_bound", std::ceil(std::log2(std::max(2, t.n))));
        if (!ledger_consistent()) return fail_stage("link", "apartness ledger violated");
        return true;
    }

    bool assemble(bool closed, VertexSeq &out) {
        std::vector<VertexSeq> trimmed(chains.size());
        for (size_t i = 0; i < chains.size(); ++i) {
            if (i < npart && !donated[i].empty()) {
                ApartCollection coll;
                coll.sets = donated[i];
                coll.ordering = chains[i].seq;
                coll.radius = order;
                trimmed[i] = delete_sparse_sets(t, chains[i].seq, coll, order, order - k);
            } else {
                trimmed[i] = chains[i].seq;
            }
        }
        for (const Insertion &ins : insertions) {
            VertexSeq &seq = trimmed[ins.chain];
            auto it = std::find(seq.begin(), seq.end(), ins.anchor);
            if (it == seq.end()) return fail_stage("assemble", "insertion anchor missing");
            seq.insert(it + 1, ins.w);
        }
        out.clear();
        size_t total = chains.size();
        size_t nlinks = closed ? total : total - 1;
        for (size_t i = 0; i < total; ++i) {
            out.insert(out.end(), trimmed[i].begin(), trimmed[i].end());
            if (i < nlinks)
                for (const auto &blob : links[i].internal_sets)
                    out.insert(out.end(), blob.begin(), blob.end());
        }
        StageRecord &st = trace->stage("assemble");
        st.margins.emplace_back("length", (double)out.size());
        bool ok = (int)out.size() == universe.count() &&
                  verify_power_seq(t, out, k, closed ? SeqKind::cycle : SeqKind::path);
        if (!ok) return fail_stage("assemble", "assembled sequence failed validation");
        return true;
    }

    bool run(bool closed, VertexSeq &out) {
        if (!partition_stage()) return false;
        if (!cover_stage()) return false;
        if (!link_stage(closed)) return false;
        return assemble(closed, out);
    }
};

} // namespace

// ---------------------------------------------------------------------------
// spec surfaces over the engine
// ---------------------------------------------------------------------------

CoverResult cover_residual(const Tournament &t, const std::vector<Chain> &chains,
                           const Bits &residual, const ParameterProfile &p) {
    CoverResult res;
    require(!chains.empty(), Errc::precondition_failed, "cover needs at least one chain");
    require((double)residual.count() <= p.residual_cap() || residual.none(),
            Errc::precondition_failed, "residual exceeds the cap");
    PipelineResult trace;
    Engine eng(t, p, p.k, Bits::full(t.n), p.rng_seed, &trace);
    eng.chains = chains;
    eng.npart = chains.size();
    eng.donated.assign(chains.size(), {});
    eng.residual = residual;
    eng.chain_of.assign(t.n, -1);
    for (size_t ci = 0; ci < chains.size(); ++ci)
        for (int v : chains[ci].seq) {
            eng.pi.push_back(v);
            eng.chain_of[v] = (int)ci;
        }
    eng.pos = position_map(eng.pi, t.n);
    eng.allowed = Bits::of(t.n, eng.pi);
    for (const Chain &c : chains) {
        for (int v : c.first(p.k)) eng.allowed.reset(v);
        for (int v : c.last(p.k)) eng.allowed.reset(v);
    }
    std::vector<int> rest = residual.to_vector();
    for (int w : rest) {
        if (!eng.cover_one(w)) {
            res.ok = false;
            res.failed_vertex = w;
            res.fail_detail = "CoverFailed(" + std::to_string(w) + ", no-window-pair)";
            return res;
        }
    }
    res.ok = true;
    res.cover_chains.assign(eng.chains.begin() + chains.size(), eng.chains.end());
    res.used_sets = eng.ledger_sets;
    res.forbidden = eng.allowed.complement();
    return res;
}

PipelineResult cut_dense_power_hamilton(const Tournament &t, const ParameterProfile &p) {
    PipelineResult res;
    int n = t.n, k = p.k;
    {
        StageRecord &st = res.stage("precondition");
        double need = n / 4.0 - p.delta * n / 200.0;
        double have = n >= 1 ? min_semidegree(t) : 0;
        st.margins.emplace_back("semidegree_margin", have - need);
        if (have < need) {
            st.status = "failed";
            st.detail = "semidegree " + std::to_string((int)have) + " below n/4 - delta n/200";
            res.failed_stage = "precondition: " + st.detail;
            return res;
        }
    }
    {
        StageRecord &st = res.stage("cut-density-evidence");
        if (n >= 2) {
            CutWitness w = (n <= 22) ? balanced_cut_density(t, CutMode::exact)
                                     : balanced_cut_density(t, CutMode::heuristic,
                                                            SearchBudget::unlimited(), p.rng_seed,
                                                            22, 8);
            st.margins.emplace_back("balanced_density", w.density);
            st.margins.emplace_back("delta", p.delta);
            st.detail = w.exact ? "exact minimum" : "heuristic upper bound";
        }
    }

    // tiny instances: the chain machinery has no room; use the exact oracle
    if (n <= std::max(4 * p.chain_order_factor * k, 16)) {
        StageRecord &st = res.stage("oracle-fallback");
        SearchOutcome so = search_power_hamilton(t, k, SeqKind::cycle, SearchBudget::unlimited());
        st.detail = search_status_name(so.status);
        if (so.status == SearchStatus::found) {
            res.found = true;
            res.witness = *so.witness;
        } else {
            st.status = "failed";
            res.failed_stage = "oracle-fallback: " + st.detail;
        }
        return res;
    }

    const std::vector<StageRecord> prefix = res.stages;
    for (int attempt = 0; attempt < std::max(1, p.pipeline_restarts); ++attempt) {
        PipelineResult trial;
        trial.stages = prefix; // keep the precondition/evidence stages
        Engine eng(t, p, k, Bits::full(t.n), p.rng_seed + 7919ull * attempt, &trial);
        VertexSeq cycle;
        if (eng.run(true, cycle)) {
            trial.found = true;
            trial.witness = cycle;
            trial.restarts_used = attempt + 1;
            return trial;
        }
        res = trial; // keep the last failing trace
        res.restarts_used = attempt + 1;
    }
    return res;
}

std::optional<Chain> spanning_chain_in(const Tournament &t, const Bits &pool, int order,
                                       const ParameterProfile &p, PipelineResult *trace,
                                       std::vector<int> *leftover) {
    PipelineResult local;
    PipelineResult *tr = trace ? trace : &local;
    int m = pool.count();
    if (m < 2 * order) return std::nullopt;

    // small pools: direct spanning-power search
    if (m <= 14) {
        VertexSeq path =
            find_long_power_path_in(t, order, pool, SearchBudget::nodes(400000), p.rng_seed);
        if ((int)path.size() == m && chain_check(t, path, pool, pool, p, order)) {
            Chain c;
            c.seq = path;
            c.order = order;
            c.tail_ground = pool;
            c.head_ground = pool;
            c.tail_witness = common_in(t, c.first(order), pool);
            c.head_witness = common_out(t, c.last(order), pool);
            return c;
        }
        return std::nullopt;
    }

    for (int attempt = 0; attempt < std::max(1, p.pipeline_restarts); ++attempt) {
        PipelineResult trial;
        Engine eng(t, p, order, pool, p.rng_seed + 104729ull * attempt, &trial);
        eng.allow_skip = leftover != nullptr;
        VertexSeq path;
        if (eng.run(false, path)) {
            Bits spanned = eng.universe;
            if (!chain_check(t, path, spanned, spanned, p, order)) continue;
            Chain c;
            c.seq = path;
            c.order = order;
            c.tail_ground = spanned;
            c.head_ground = spanned;
            c.tail_witness = common_in(t, c.first(order), spanned);
            c.head_witness = common_out(t, c.last(order), spanned);
            *tr = trial;
            tr->found = true;
            if (leftover) *leftover = eng.skipped;
            return c;
        }
        *tr = trial;
    }
    return std::nullopt;
}

Chain spanning_chain(const Tournament &t, const ParameterProfile &p) {
    require(t.n >= 2 * p.k, Errc::too_small, "need n >= 2k");
    PipelineResult trace;
    auto c = spanning_chain_in(t, Bits::full(t.n), p.k, p, &trace);
    if (!c) fail(Errc::not_found, "spanning chain failed at stage: " + trace.failed_stage);
    return *c;
}

} // namespace powham

#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "error.hpp"
#include "rng.hpp"

namespace powham {

const char *search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "Found";
        case SearchStatus::exhausted_none: return "ExhaustedNone";
        case SearchStatus::budget_exceeded: return "BudgetExceeded";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct MemoKey {
    uint64_t visited;
    uint64_t first_pack;
    uint64_t last_pack;
    bool operator==(const MemoKey &o) const {
        return visited == o.visited && first_pack == o.first_pack && last_pack == o.last_pack;
    }
};

struct MemoHash {
    size_t operator()(const MemoKey &k) const {
        uint64_t h = k.visited * 0x9e3779b97f4a7c15ull;
        h ^= k.first_pack + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= k.last_pack + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return (size_t)h;
    }
};

enum class Probe { found, exhausted, aborted };

// Backtracking over extension orders. State is (visited set, ordered last
// min(k,depth) vertices); a candidate must be out-dominated by each of the
// last k. Cycle searches fix the start vertex and check wrap edges as the
// final k positions are placed.
struct HamSearch {
    const Tournament &t;
    int k;
    SeqKind kind;
    SearchBudget budget;
    Clock::time_point deadline;
    bool use_deadline = false;

    uint64_t nodes = 0;
    bool aborted = false;
    VertexSeq seq;
    Bits visited;

    bool memo_on = false;
    std::unordered_map<MemoKey, bool, MemoHash> memo_cur, memo_old;

    HamSearch(const Tournament &t_, int k_, SeqKind kind_, const SearchBudget &b)
        : t(t_), k(k_), kind(kind_), budget(b), visited(t_.n) {
        memo_on = budget.memo_cap > 0 && t.n <= 64 && k <= 8;
        if (budget.max_millis) {
            deadline = Clock::now() + std::chrono::milliseconds(budget.max_millis);
            use_deadline = true;
        }
    }

    bool over_budget() {
        if (budget.max_nodes && nodes > budget.max_nodes) return true;
        if (use_deadline && (nodes & 4095) == 0 && Clock::now() > deadline) return true;
        return false;
    }

    uint64_t pack_window(int from, int count) const {
        uint64_t p = 0;
        for (int i = 0; i < count; ++i) p = (p << 8) | (uint64_t)(seq[from + i] + 1);
        return p;
    }

    MemoKey key() const {
        int len = (int)seq.size();
        int w = std::min(k, len);
        MemoKey mk{visited.word(0), 0, pack_window(len - w, w)};
        if (kind == SeqKind::cycle) mk.first_pack = pack_window(0, std::min(k, len));
        return mk;
    }

    bool memo_failed(const MemoKey &mk) const {
        return memo_cur.count(mk) || memo_old.count(mk);
    }

    void memo_insert(const MemoKey &mk) {
        if (memo_cur.size() >= budget.memo_cap) {
            memo_old = std::move(memo_cur);
            memo_cur.clear();
        }
        memo_cur.emplace(mk, true);
    }

    Bits candidate_set() const {
        int len = (int)seq.size();
        Bits cands = visited.complement();
        for (int i = std::max(0, len - k); i < len; ++i) cands &= t.out[seq[i]];
        return cands;
    }

    // wrap edges from position len to the cycle start block
    bool wrap_ok(int c) const {
        if (kind != SeqKind::cycle) return true;
        int p = (int)seq.size();
        for (int j = 0; j <= p + k - t.n; ++j)
            if (!t.edge(c, seq[j])) return false;
        return true;
    }

    int onward_count(int c) const {
        int len = (int)seq.size();
        Bits w = visited.complement();
        w.reset(c);
        for (int i = std::max(0, len - (k - 1)); i < len; ++i) w &= t.out[seq[i]];
        if (k >= 1) w &= t.out[c];
        return w.count();
    }

    Probe dfs() {
        ++nodes;
        if (over_budget()) {
            aborted = true;
            return Probe::aborted;
        }
        int len = (int)seq.size();
        if (len == t.n) return Probe::found;

        MemoKey mk{};
        if (memo_on && len >= 1) {
            mk = key();
            if (memo_failed(mk)) return Probe::exhausted;
        }

        Bits cset = candidate_set();
        std::vector<std::pair<int, int>> order; // (onward, vertex)
        cset.for_each([&](int c) {
            if (!wrap_ok(c)) return;
            order.emplace_back(onward_count(c), c);
        });
        std::sort(order.begin(), order.end());

        bool clean = true;
        for (auto [on, c] : order) {
            (void)on;
            seq.push_back(c);
            visited.set(c);
            Probe r = dfs();
            if (r == Probe::found) return Probe::found;
            visited.reset(c);
            seq.pop_back();
            if (r == Probe::aborted) clean = false;
        }
        if (clean && memo_on && len >= 1) memo_insert(mk);
        return clean ? Probe::exhausted : Probe::aborted;
    }

    SearchOutcome run() {
        SearchOutcome out;
        Probe r;
        if (kind == SeqKind::cycle) {
            // every Hamilton power cycle has a rotation starting at vertex 0
            seq.push_back(0);
            visited.set(0);
            r = dfs();
        } else {
            std::vector<std::pair<int, int>> starts;
            for (int v = 0; v < t.n; ++v) starts.emplace_back(t.out_degree(v), v);
            std::sort(starts.begin(), starts.end());
            r = Probe::exhausted;
            bool clean = true;
            for (auto [d, v] : starts) {
                (void)d;
                seq.assign(1, v);
                visited.clear();
                visited.set(v);
                Probe pr = dfs();
                if (pr == Probe::found) {
                    r = Probe::found;
                    break;
                }
                if (pr == Probe::aborted) clean = false;
            }
            if (r != Probe::found) r = clean ? Probe::exhausted : Probe::aborted;
        }
        out.nodes_expanded = nodes;
        if (r == Probe::found) {
            require(verify_power_seq(t, seq, k, kind), Errc::invariant_violation,
                    "search produced an invalid witness");
            out.status = SearchStatus::found;
            out.witness = seq;
        } else if (r == Probe::exhausted) {
            out.status = SearchStatus::exhausted_none;
        } else {
            out.status = SearchStatus::budget_exceeded;
        }
        return out;
    }
};

} // namespace

SearchOutcome search_power_hamilton(const Tournament &t, int k, SeqKind kind,
                                    const SearchBudget &budget) {
    require(t.n >= 1, Errc::precondition_failed, "empty tournament");
    require(k >= 1, Errc::precondition_failed, "k must be >= 1");
    if (kind == SeqKind::cycle)
        require(t.n >= k + 1, Errc::degenerate_cycle,
                "cycle search needs n >= k+1");
    HamSearch s(t, k, kind, budget);
    return s.run();
}

// ---------------------------------------------------------------------------
// long power paths
// ---------------------------------------------------------------------------

namespace {

// Bidirectional greedy extension with bounded backtracking; an anytime
// exhaustive DFS when the budget allows.
struct LongPathSearch {
    const Tournament &t;
    int k;
    const Bits &pool;
    uint64_t node_cap;

    uint64_t nodes = 0;
    std::deque<int> seq;
    Bits visited;
    VertexSeq best;

    LongPathSearch(const Tournament &t_, int k_, const Bits &pool_, uint64_t cap)
        : t(t_), k(k_), pool(pool_), node_cap(cap), visited(t_.n) {}

    Bits side_cands(bool back) const {
        Bits c = pool;
        c.andnot(visited);
        int len = (int)seq.size();
        int w = std::min(k, len);
        if (back) {
            for (int i = 0; i < w; ++i) c &= t.in[seq[i]];
        } else {
            for (int i = len - w; i < len; ++i) c &= t.out[seq[i]];
        }
        return c;
    }

    int onward(bool back, int c) const {
        Bits w = pool;
        w.andnot(visited);
        w.reset(c);
        int len = (int)seq.size();
        int keep = std::min(k - 1, len);
        if (back) {
            w &= t.in[c];
            for (int i = 0; i < keep; ++i) w &= t.in[seq[i]];
        } else {
            w &= t.out[c];
            for (int i = len - keep; i < len; ++i) w &= t.out[seq[i]];
        }
        return w.count();
    }

    void record() {
        if (seq.size() > best.size()) best.assign(seq.begin(), seq.end());
    }

    struct Step {
        bool back;
        std::vector<int> cands;
        size_t idx;
    };

    // greedy candidate order: maximal common out-neighborhood first
    std::vector<int> ordered(bool back) const {
        std::vector<std::pair<int, int>> sc;
        side_cands(back).for_each([&](int c) { sc.emplace_back(-onward(back, c), c); });
        std::sort(sc.begin(), sc.end());
        std::vector<int> r;
        r.reserve(sc.size());
        for (auto &[s, c] : sc) r.push_back(c);
        return r;
    }

    void run_from(int start) {
        seq.clear();
        visited.clear();
        seq.push_back(start);
        visited.set(start);
        std::vector<Step> stack;
        int target = pool.count();
        while (true) {
            record();
            if ((int)seq.size() == target) return;
            std::vector<int> f = ordered(false);
            std::vector<int> b = ordered(true);
            bool back = b.size() > f.size();
            std::vector<int> &cands = back ? b : f;
            if (!cands.empty() && nodes < node_cap) {
                int c = cands[0];
                stack.push_back({back, std::move(cands), 0});
                if (back) seq.push_front(c);
                else seq.push_back(c);
                visited.set(c);
                ++nodes;
                continue;
            }
            // dead end (or out of budget): backtrack
            while (!stack.empty()) {
                Step &s = stack.back();
                int placed = s.cands[s.idx];
                visited.reset(placed);
                if (s.back) seq.pop_front();
                else seq.pop_back();
                if (++s.idx < s.cands.size() && nodes < node_cap) {
                    int c = s.cands[s.idx];
                    if (s.back) seq.push_front(c);
                    else seq.push_back(c);
                    visited.set(c);
                    ++nodes;
                    break;
                }
                stack.pop_back();
            }
            if (stack.empty()) return;
            if (nodes >= node_cap && best.size() >= seq.size()) return;
        }
    }
};

} // namespace

VertexSeq find_long_power_path_in(const Tournament &t, int k, const Bits &pool,
                                  const SearchBudget &budget, uint64_t seed) {
    int m = pool.count();
    if (m == 0) return {};
    uint64_t cap = budget.max_nodes ? budget.max_nodes : (uint64_t)80 * m;

    // starts: best common-out survivors plus seeded random picks
    std::vector<std::pair<int, int>> by_deg;
    pool.for_each([&](int v) { by_deg.emplace_back(-t.out[v].intersect_count(pool), v); });
    std::sort(by_deg.begin(), by_deg.end());
    std::vector<int> starts;
    for (size_t i = 0; i < by_deg.size() && starts.size() < 4; ++i)
        starts.push_back(by_deg[i].second);
    Rng rng = make_rng(seed);
    std::vector<int> pv = pool.to_vector();
    for (int i = 0; i < 4 && !pv.empty(); ++i) {
        int v = pv[rng_below(rng, (int)pv.size())];
        if (std::find(starts.begin(), starts.end(), v) == starts.end()) starts.push_back(v);
    }

    LongPathSearch search(t, k, pool, cap / std::max<size_t>(1, starts.size()));
    VertexSeq best;
    for (int s : starts) {
        search.nodes = 0;
        search.run_from(s);
        if (search.best.size() > best.size()) best = search.best;
        if ((int)best.size() == m) break;
    }
    require(verify_power_seq(t, best, k, SeqKind::path), Errc::invariant_violation,
            "long-path search produced an invalid sequence");
    return best;
}

VertexSeq insertion_hamilton_path(const Tournament &t) {
    VertexSeq path;
    for (int v = 0; v < t.n; ++v) {
        size_t pos = path.size();
        for (size_t i = 0; i <= path.size(); ++i) {
            bool ok_left = (i == 0) || t.edge(path[i - 1], v);
            bool ok_right = (i == path.size()) || t.edge(v, path[i]);
            if (ok_left && ok_right) {
                pos = i;
                break;
            }
        }
        path.insert(path.begin() + pos, v);
    }
    require(verify_power_seq(t, path, 1, SeqKind::path), Errc::invariant_violation,
            "insertion produced an invalid path");
    return path;
}

VertexSeq find_long_power_path(const Tournament &t, int k, const ParameterProfile &p,
                               const SearchBudget &budget) {
    require(t.n >= 1, Errc::precondition_failed, "empty tournament");
    VertexSeq path;
    if (k == 1) {
        path = insertion_hamilton_path(t);
    } else {
        path = find_long_power_path_in(t, k, Bits::full(t.n), budget, p.rng_seed);
    }
    double floor;
    if (p.is_strict()) floor = t.n * std::pow(2.0, -8.0 * k);
    else floor = std::min((double)t.n, (double)std::max(1, p.desk_floor));
    require((double)path.size() >= floor, Errc::floor_not_met,
            "path of length " + std::to_string(path.size()) + " below floor " +
                std::to_string(floor));
    return path;
}

// ---------------------------------------------------------------------------
// transitive subsets
// ---------------------------------------------------------------------------

namespace {

bool transitive_rec(const Tournament &t, const Bits &cands, int need, VertexSeq &acc) {
    if (need == 0) return true;
    if (cands.count() < need) return false;
    std::vector<std::pair<int, int>> order;
    cands.for_each([&](int v) { order.emplace_back(-t.out[v].intersect_count(cands), v); });
    std::sort(order.begin(), order.end());
    for (auto [d, v] : order) {
        (void)d;
        acc.push_back(v);
        if (transitive_rec(t, cands & t.out[v], need - 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

} // namespace

VertexSeq find_transitive_set(const Tournament &t, int k) {
    require(k >= 0, Errc::precondition_failed, "k must be >= 0");
    VertexSeq acc;
    if (transitive_rec(t, Bits::full(t.n), k, acc)) return acc;
    fail(Errc::not_found,
         "no transitive set of size " + std::to_string(k) + " in " + std::to_string(t.n) +
             " vertices");
}

// ---------------------------------------------------------------------------
// transitive fraction
// ---------------------------------------------------------------------------

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

FractionEstimate fraction_impl(const Tournament &t, int k, long long exact_cap,
                               long long samples, uint64_t seed, bool allow_sampling) {
    require(t.n >= k && k >= 1, Errc::precondition_failed, "need n >= k >= 1");
    FractionEstimate fe;
    double total = binom(t.n, k);
    if (total <= (double)exact_cap) {
        fe.exact = true;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            fe.total++;
            if (is_transitive_set(t, idx)) fe.favorable++;
            int i = k - 1;
            while (i >= 0 && idx[i] == t.n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        fe.fraction = (double)fe.favorable / (double)fe.total;
        return fe;
    }
    require(allow_sampling, Errc::too_large_for_exact,
            "C(n,k) = " + std::to_string(total) + " above the exact cap");
    fe.exact = false;
    Rng rng = make_rng(seed);
    for (long long s = 0; s < samples; ++s) {
        fe.total++;
        if (is_transitive_set(t, sample_distinct(rng, t.n, k))) fe.favorable++;
    }
    fe.fraction = (double)fe.favorable / (double)fe.total;
    double half = 1.96 * std::sqrt(fe.fraction * (1 - fe.fraction) / (double)fe.total);
    fe.ci_low = std::max(0.0, fe.fraction - half);
    fe.ci_high = std::min(1.0, fe.fraction + half);
    return fe;
}

} // namespace

FractionEstimate transitive_fraction(const Tournament &t, int k, long long exact_cap,
                                     long long samples, uint64_t seed) {
    return fraction_impl(t, k, exact_cap, samples, seed, true);
}

FractionEstimate transitive_fraction_exact(const Tournament &t, int k, long long exact_cap) {
    return fraction_impl(t, k, exact_cap, 0, 0, false);
}

bool strongly_connected(const Tournament &t) {
    if (t.n <= 1) return true;
    for (Direction dir : {Direction::out, Direction::in}) {
        Bits reached(t.n);
        reached.set(0);
        std::vector<int> frontier{0};
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            const Bits &nb = dir == Direction::out ? t.out[v] : t.in[v];
            nb.for_each([&](int u) {
                if (!reached.test(u)) {
                    reached.set(u);
                    frontier.push_back(u);
                }
            });
        }
        if (reached.count() != t.n) return false;
    }
    return true;
}

} // namespace powham

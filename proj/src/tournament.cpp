#include "tournament.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace powham {

void Tournament::validate() const {
    for (int v = 0; v < n; ++v) {
        require(!out[v].test(v) && !in[v].test(v), Errc::self_loop,
                "vertex " + std::to_string(v));
        for (int u = v + 1; u < n; ++u) {
            bool fwd = out[v].test(u), bwd = out[u].test(v);
            require(fwd != bwd,
                    fwd ? Errc::conflicting_orientation : Errc::missing_pair,
                    "pair (" + std::to_string(v) + "," + std::to_string(u) + ")");
            require(in[u].test(v) == fwd && in[v].test(u) == bwd, Errc::invariant_violation,
                    "in/out rows disagree");
        }
    }
}

Tournament Tournament::reversed() const {
    Tournament r(n);
    r.out = in;
    r.in = out;
    return r;
}

Tournament Tournament::induced(const Bits &s, std::vector<int> *idmap) const {
    std::vector<int> ids = s.to_vector();
    Tournament r((int)ids.size());
    for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = i + 1; j < ids.size(); ++j) {
            if (edge(ids[i], ids[j])) r.set_edge((int)i, (int)j);
            else r.set_edge((int)j, (int)i);
        }
    if (idmap) *idmap = std::move(ids);
    return r;
}

Tournament build_tournament(int n, const std::vector<std::pair<int, int>> &edges) {
    require(n >= 0, Errc::out_of_range, "negative vertex count");
    Tournament t(n);
    std::vector<bool> oriented((size_t)n * n, false);
    for (auto [u, v] : edges) {
        require(u >= 0 && u < n && v >= 0 && v < n, Errc::out_of_range,
                "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        require(u != v, Errc::self_loop, "vertex " + std::to_string(u));
        require(!oriented[(size_t)u * n + v] && !oriented[(size_t)v * n + u],
                Errc::conflicting_orientation,
                "pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
        oriented[(size_t)u * n + v] = true;
        t.set_edge(u, v);
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            require(oriented[(size_t)u * n + v] || oriented[(size_t)v * n + u], Errc::missing_pair,
                    "pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return t;
}

int min_semidegree(const Tournament &t) {
    require(t.n >= 1, Errc::precondition_failed, "empty tournament");
    int d = t.n;
    for (int v = 0; v < t.n; ++v) d = std::min({d, t.out_degree(v), t.in_degree(v)});
    return d;
}

int regularity_defect(const Tournament &t) {
    return std::max(0, t.n / 2 - min_semidegree(t));
}

Bits common_neighbors(const Tournament &t, const Bits &s, Direction dir, const Bits &restrict_to) {
    require(s.any(), Errc::empty_query_set, "common_neighbors of empty set");
    Bits acc = restrict_to;
    s.for_each([&](int v) { acc &= (dir == Direction::out ? t.out[v] : t.in[v]); });
    return acc;
}

Bits common_out(const Tournament &t, const std::vector<int> &vs, const Bits &restrict_to) {
    require(!vs.empty(), Errc::empty_query_set, "common_out of empty set");
    Bits acc = restrict_to;
    for (int v : vs) acc &= t.out[v];
    return acc;
}

Bits common_in(const Tournament &t, const std::vector<int> &vs, const Bits &restrict_to) {
    require(!vs.empty(), Errc::empty_query_set, "common_in of empty set");
    Bits acc = restrict_to;
    for (int v : vs) acc &= t.in[v];
    return acc;
}

static bool distinct_and_in_range(const Tournament &t, const VertexSeq &seq) {
    Bits seen(t.n);
    for (int v : seq) {
        if (v < 0 || v >= t.n || seen.test(v)) return false;
        seen.set(v);
    }
    return true;
}

bool verify_power_seq(const Tournament &t, const VertexSeq &seq, int k, SeqKind kind) {
    require(k >= 1, Errc::precondition_failed, "power order must be >= 1");
    int len = (int)seq.size();
    if (kind == SeqKind::cycle)
        require(len > k, Errc::degenerate_cycle,
                "cycle of length " + std::to_string(len) + " with k=" + std::to_string(k));
    if (!distinct_and_in_range(t, seq)) return false;
    for (int i = 0; i < len; ++i)
        for (int d = 1; d <= k; ++d) {
            int j = i + d;
            if (j >= len) {
                if (kind == SeqKind::path) break;
                j -= len;
            }
            if (!t.edge(seq[i], seq[j])) return false;
        }
    return true;
}

std::optional<VertexSeq> transitive_order(const Tournament &t, const std::vector<int> &set) {
    VertexSeq order = set;
    // out-degree inside the induced subtournament, decreasing
    Bits mask = Bits::of(t.n, set);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = t.out[a].intersect_count(mask), db = t.out[b].intersect_count(mask);
        return da != db ? da > db : a < b;
    });
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j)
            if (!t.edge(order[i], order[j])) return std::nullopt;
    return order;
}

HeadTailResult head_tail_check(const Tournament &t, const std::vector<int> &s, const Bits &ground,
                               HeadTail kind, const ParameterProfile &p, int order) {
    require((int)s.size() == order, Errc::wrong_size,
            "expected a set of size " + std::to_string(order));
    HeadTailResult r;
    r.witness = Bits(t.n);
    if (!is_transitive_set(t, s)) return r;
    r.witness = (kind == HeadTail::head) ? common_out(t, s, ground) : common_in(t, s, ground);
    r.ok = r.witness.count() >= p.head_tail_threshold(ground.count(), order);
    return r;
}

HeadTailResult is_head_tail(const Tournament &t, const std::vector<int> &s, const Bits &ground,
                            HeadTail kind, const ParameterProfile &p) {
    return head_tail_check(t, s, ground, kind, p, p.k);
}

bool chain_check(const Tournament &t, const VertexSeq &seq, const Bits &a, const Bits &b,
                 const ParameterProfile &p, int order) {
    require((int)seq.size() >= 2 * order, Errc::too_short,
            "chain needs at least " + std::to_string(2 * order) + " vertices");
    if (!verify_power_seq(t, seq, order, SeqKind::path)) return false;
    VertexSeq first(seq.begin(), seq.begin() + order);
    VertexSeq last(seq.end() - order, seq.end());
    if (!head_tail_check(t, first, a, HeadTail::tail, p, order).ok) return false;
    return head_tail_check(t, last, b, HeadTail::head, p, order).ok;
}

bool is_chain(const Tournament &t, const VertexSeq &seq, const Bits &a, const Bits &b,
              const ParameterProfile &p) {
    return chain_check(t, seq, a, b, p, p.k);
}

} // namespace powham

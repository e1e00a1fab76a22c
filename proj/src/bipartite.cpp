#include "bipartite.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "error.hpp"

namespace powham {

void BipartiteGraph::add_edge(int a, int b) {
    require(a >= 0 && a < na && b >= 0 && b < nb, Errc::out_of_range,
            "bipartite edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    require(!adj_a[a].test(b), Errc::invariant_violation,
            "duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    adj_a[a].set(b);
    adj_b[b].set(a);
}

namespace {

// unified vertex ids: A-side a -> a, B-side b -> na + b
struct UnifiedView {
    const BipartiteGraph &g;
    int size() const { return g.na + g.nb; }
    template <typename F>
    void neighbors(int u, F &&f) const {
        if (u < g.na) g.adj_a[u].for_each([&](int b) { f(g.na + b); });
        else g.adj_b[u - g.na].for_each([&](int a) { f(a); });
    }
};

} // namespace

std::optional<EvenCycle> find_short_cycle(const BipartiteGraph &g, int max_len) {
    UnifiedView view{g};
    int n = view.size();
    const int max_depth = max_len / 2;
    std::vector<int> depth(n), parent(n);
    int best_len = max_len + 1;
    std::vector<int> best_cycle;

    for (int root = 0; root < n; ++root) {
        std::fill(depth.begin(), depth.end(), -1);
        std::deque<int> q{root};
        depth[root] = 0;
        parent[root] = -1;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            view.neighbors(x, [&](int y) {
                if (y == parent[x]) return;
                if (depth[y] >= 0 && parent[y] == x) return; // tree edge, other end
                if (depth[y] < 0) {
                    if (depth[x] + 1 <= max_depth) {
                        depth[y] = depth[x] + 1;
                        parent[y] = x;
                        q.push_back(y);
                    }
                    return;
                }
                // non-tree edge: extract the simple cycle through the LCA
                std::vector<int> px{x}, py{y};
                while (px.back() != root) px.push_back(parent[px.back()]);
                while (py.back() != root) py.push_back(parent[py.back()]);
                while (px.size() >= 2 && py.size() >= 2 &&
                       px[px.size() - 2] == py[py.size() - 2]) {
                    px.pop_back();
                    py.pop_back();
                }
                if (px.back() != py.back()) return; // different BFS trees can't happen
                std::vector<int> cyc(px.begin(), px.end());
                for (int i = (int)py.size() - 2; i >= 0; --i) cyc.push_back(py[i]);
                if ((int)cyc.size() <= max_len && (int)cyc.size() < best_len) {
                    best_len = (int)cyc.size();
                    best_cycle = cyc;
                }
            });
            if (best_len <= 4) break;
        }
        if (best_len <= 4) break;
    }
    if (best_cycle.empty()) return std::nullopt;

    // rotate so the cycle starts on the A side, then split alternately
    size_t start = 0;
    while (best_cycle[start] >= g.na) ++start;
    EvenCycle c;
    for (size_t i = 0; i < best_cycle.size(); ++i) {
        int u = best_cycle[(start + i) % best_cycle.size()];
        if (u < g.na) c.a_vertices.push_back(u);
        else c.b_vertices.push_back(u - g.na);
    }
    return c;
}

namespace {

bool krr_rec(const BipartiteGraph &g, int r, int start, std::vector<int> &chosen,
             const Bits &common, KrrWitness &out) {
    if ((int)chosen.size() == r) {
        out.a_vertices = chosen;
        out.b_vertices.clear();
        for (int b = common.next(0); (int)out.b_vertices.size() < r; b = common.next(b + 1))
            out.b_vertices.push_back(b);
        return true;
    }
    for (int a = start; a <= g.na - (r - (int)chosen.size()); ++a) {
        Bits cb = common & g.adj_a[a];
        if (cb.count() < r) continue;
        chosen.push_back(a);
        if (krr_rec(g, r, a + 1, chosen, cb, out)) return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace

std::optional<KrrWitness> find_krr(const BipartiteGraph &g, int r) {
    require(r >= 1, Errc::precondition_failed, "r must be >= 1");
    KrrWitness w;
    std::vector<int> chosen;
    if (krr_rec(g, r, 0, chosen, Bits::full(g.nb), w)) return w;
    return std::nullopt;
}

} // namespace powham

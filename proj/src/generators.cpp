#include "generators.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace powham {

Tournament random_tournament(int n, uint64_t seed) {
    Rng rng = make_rng(seed);
    Tournament t(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (rng() & 1) t.set_edge(u, v);
            else t.set_edge(v, u);
        }
    return t;
}

Tournament rotational_tournament(int n) {
    require(n >= 1 && n % 2 == 1, Errc::bad_modulus,
            "rotational tournament needs odd n, got " + std::to_string(n));
    Tournament t(n);
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= (n - 1) / 2; ++d) t.set_edge(i, (i + d) % n);
    return t;
}

static bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; (long long)d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

Tournament paley_tournament(int q) {
    require(is_prime(q) && q % 4 == 3, Errc::bad_modulus,
            "paley tournament needs a prime q = 3 (mod 4), got " + std::to_string(q));
    std::vector<bool> residue(q, false);
    for (int x = 1; x < q; ++x) residue[(int)((long long)x * x % q)] = true;
    Tournament t(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (i != j && residue[(j - i + q) % q]) t.set_edge(i, j);
    return t;
}

Tournament circulant_even(int n) {
    require(n >= 2 && n % 2 == 0, Errc::bad_modulus, "even n required");
    Tournament t(n);
    for (int i = 0; i < n; ++i)
        for (int d = 1; d < n / 2; ++d) t.set_edge(i, (i + d) % n);
    for (int i = 0; i < n / 2; ++i) t.set_edge(i, i + n / 2);
    return t;
}

TwoClusterInstance two_cluster(const TwoClusterSpec &spec, uint64_t seed) {
    int h = spec.half;
    int r = spec.aligned + spec.reverse + spec.moderate;
    int n = 2 * h + r;
    Rng rng = make_rng(seed);

    TwoClusterInstance inst;
    inst.t = Tournament(n);
    inst.side_a = Bits(n);
    inst.side_b = Bits(n);
    inst.remainder = Bits(n);
    Tournament &t = inst.t;

    Tournament half_t = (h % 2 == 1) ? rotational_tournament(h) : circulant_even(h);
    for (int i = 0; i < h; ++i) inst.side_a.set(i);
    for (int i = 0; i < h; ++i) inst.side_b.set(h + i);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j)
            if (half_t.edge(i, j)) {
                t.set_edge(i, j);
                t.set_edge(h + i, h + j);
            }

    // cross edges: all B -> A, then re-orient a sparse random forward set
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) t.set_edge(h + b, a);
    int fw = spec.forward_edges >= 0 ? spec.forward_edges
                                     : (int)((long long)h * h * 4 / 100);
    fw = std::min(fw, h * h);
    inst.forward_edges = fw;
    {
        std::vector<int> pairs(h * h);
        for (int i = 0; i < h * h; ++i) pairs[i] = i;
        for (int i = 0; i < fw; ++i) {
            std::swap(pairs[i], pairs[i + rng_below(rng, h * h - i)]);
            int a = pairs[i] / h, b = pairs[i] % h;
            t.set_edge(a, h + b);
        }
    }

    // remainder vertices
    int next_id = 2 * h;
    auto plant = [&](std::vector<int> &list, int count) {
        for (int c = 0; c < count; ++c) list.push_back(next_id++);
    };
    plant(inst.planted_aligned, spec.aligned);
    plant(inst.planted_reverse, spec.reverse);
    plant(inst.planted_moderate, spec.moderate);

    for (int v : inst.planted_aligned) {
        for (int a = 0; a < h; ++a) t.set_edge(a, v);
        for (int b = 0; b < h; ++b) t.set_edge(v, h + b);
    }
    for (int v : inst.planted_reverse) {
        // beats all of A and loses to all of B except a 5% exception set
        int ex = std::max(1, h / 20);
        std::vector<int> pa = sample_distinct(rng, h, ex), pb = sample_distinct(rng, h, ex);
        Bits exa = Bits::of(h, pa), exb = Bits::of(h, pb);
        for (int a = 0; a < h; ++a) {
            if (exa.test(a)) t.set_edge(a, v);
            else t.set_edge(v, a);
        }
        for (int b = 0; b < h; ++b) {
            if (exb.test(b)) t.set_edge(v, h + b);
            else t.set_edge(h + b, v);
        }
    }
    for (int v : inst.planted_moderate) {
        for (int u = 0; u < 2 * h; ++u) {
            if (rng() & 1) t.set_edge(u, v);
            else t.set_edge(v, u);
        }
    }
    // remainder-internal edges
    for (int u = 2 * h; u < n; ++u) {
        inst.remainder.set(u);
        for (int v = u + 1; v < n; ++v) {
            if (rng() & 1) t.set_edge(u, v);
            else t.set_edge(v, u);
        }
    }
    return inst;
}

BipartiteGraph random_bipartite(int na, int nb, double density, uint64_t seed) {
    Rng rng = make_rng(seed);
    BipartiteGraph g(na, nb);
    const uint64_t cut = (uint64_t)(density * (double)UINT64_MAX);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
            if (rng() < cut) g.add_edge(a, b);
    return g;
}

BipartiteGraph matching_bipartite(int t) {
    BipartiteGraph g(t, t);
    for (int i = 0; i < t; ++i) g.add_edge(i, i);
    return g;
}

BipartiteGraph cycle_bipartite(int t) {
    BipartiteGraph g(t, t);
    for (int i = 0; i < t; ++i) {
        g.add_edge(i, i);
        g.add_edge((i + 1) % t, i);
    }
    return g;
}

std::optional<BipartiteGraph> tutte_12_cage() {
    static const int lcf[18] = {17, 27,  -13, -59, -35, 35, -11, 13,  -53,
                                53, -27, 21,  57,  11,  -21, -57, 59, -17};
    const int n = 126;
    UndirectedGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    for (int i = 0; i < n; ++i) {
        int j = ((i + lcf[i % 18]) % n + n) % n;
        if (!g.has_edge(i, j)) g.add_edge(i, j);
    }
    for (int v = 0; v < n; ++v)
        if (g.degree(v) != 3) return std::nullopt;
    // 2-color; the cycle is even so colors alternate along it
    std::vector<int> color(n, -1);
    color[0] = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        bool odd_cycle = false;
        g.adj[v].for_each([&](int u) {
            if (color[u] < 0) {
                color[u] = 1 - color[v];
                stack.push_back(u);
            } else if (color[u] == color[v]) odd_cycle = true;
        });
        if (odd_cycle) return std::nullopt;
    }
    std::vector<int> ida(n, -1), idb(n, -1);
    int na = 0, nb = 0;
    for (int v = 0; v < n; ++v) {
        if (color[v] == 0) ida[v] = na++;
        else idb[v] = nb++;
    }
    if (na != 63 || nb != 63) return std::nullopt;
    BipartiteGraph bg(na, nb);
    for (int v = 0; v < n; ++v)
        if (color[v] == 0)
            g.adj[v].for_each([&](int u) { bg.add_edge(ida[v], idb[u]); });
    if (find_short_cycle(bg, 10).has_value()) return std::nullopt; // girth must exceed 10
    if (!find_short_cycle(bg, 12).has_value()) return std::nullopt; // and equal 12
    return bg;
}

UndirectedGraph random_even_graph(int n, double density, uint64_t seed) {
    Rng rng = make_rng(seed);
    UndirectedGraph g(n);
    const uint64_t cut = (uint64_t)(density * (double)UINT64_MAX);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng() < cut) g.add_edge(u, v);
    // toggle one edge inside each pair of odd-degree vertices
    std::vector<int> odd;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) % 2) odd.push_back(v);
    for (size_t i = 0; i + 1 < odd.size(); i += 2) g.toggle_edge(odd[i], odd[i + 1]);
    return g;
}

UndirectedGraph circulant_graph(int n, int m) {
    require(2 * m < n, Errc::precondition_failed, "need 2m < n");
    UndirectedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= m; ++d) g.add_edge(i, (i + d) % n);
    return g;
}

} // namespace powham

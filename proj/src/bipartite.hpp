#ifndef POWHAM_BIPARTITE_HPP
#define POWHAM_BIPARTITE_HPP

#include <optional>
#include <vector>

#include "bits.hpp"

namespace powham {

// Undirected bipartite graph with named parts. Part vertices are indexed
// 0..na-1 and 0..nb-1 independently.
struct BipartiteGraph {
    int na = 0, nb = 0;
    std::vector<Bits> adj_a; // adj_a[a] = neighbors of a in B
    std::vector<Bits> adj_b; // adj_b[b] = neighbors of b in A

    BipartiteGraph() = default;
    BipartiteGraph(int na_, int nb_)
        : na(na_), nb(nb_), adj_a(na_, Bits(nb_)), adj_b(nb_, Bits(na_)) {}

    bool has_edge(int a, int b) const { return adj_a[a].test(b); }

    // throws on duplicates or out-of-range endpoints
    void add_edge(int a, int b);

    long long edge_count() const {
        long long m = 0;
        for (const auto &row : adj_a) m += row.count();
        return m;
    }

    int degree_a(int a) const { return adj_a[a].count(); }
    int degree_b(int b) const { return adj_b[b].count(); }
};

// cycle through alternating part-A/part-B vertices, as (a0,b0,a1,b1,...)
struct EvenCycle {
    std::vector<int> a_vertices;
    std::vector<int> b_vertices;
    int length() const { return (int)(a_vertices.size() + b_vertices.size()); }
};

// shortest even cycle of length <= max_len (4, 6 or 8), if any
std::optional<EvenCycle> find_short_cycle(const BipartiteGraph &g, int max_len = 8);

struct KrrWitness {
    std::vector<int> a_vertices;
    std::vector<int> b_vertices;
};

// exhaustive K_{r,r} search (intended for r <= 3); witness if found
std::optional<KrrWitness> find_krr(const BipartiteGraph &g, int r);

} // namespace powham

#endif

#ifndef POWHAM_GENERATORS_HPP
#define POWHAM_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "bipartite.hpp"
#include "tournament.hpp"

namespace powham {

Tournament random_tournament(int n, uint64_t seed);

// i -> j iff (j - i) mod n in {1, ..., (n-1)/2}; regular, odd n only
Tournament rotational_tournament(int n);

// quadratic-residue tournament, q prime with q % 4 == 3
Tournament paley_tournament(int q);

// near-regular circulant for even n (antipodal pairs oriented low -> high)
Tournament circulant_even(int n);

// Planted sparse-cut instance: two near-regular halves, a sparse random
// forward A->B edge set, and remainder vertices of three planted kinds:
//   aligned:  dominated by all of A, dominates all of B
//   reverse:  dominates 95% of A, dominated by 95% of B
//   moderate: random edges both ways (blends into the sides)
struct TwoClusterSpec {
    int half = 64;
    int forward_edges = -1; // -1: 4% of the cross pairs
    int aligned = 2;
    int reverse = 2;
    int moderate = 8;
};

struct TwoClusterInstance {
    Tournament t;
    Bits side_a, side_b;   // the two halves
    Bits remainder;        // all planted remainder vertices
    std::vector<int> planted_aligned, planted_reverse, planted_moderate;
    int forward_edges = 0;
};

TwoClusterInstance two_cluster(const TwoClusterSpec &spec, uint64_t seed);

BipartiteGraph random_bipartite(int na, int nb, double density, uint64_t seed);

// a perfect matching on t+t vertices (i -- i)
BipartiteGraph matching_bipartite(int t);

// the cycle C_{2t} as a bipartite graph on t+t
BipartiteGraph cycle_bipartite(int t);

// simple undirected graph as a symmetric adjacency matrix
struct UndirectedGraph {
    int n = 0;
    std::vector<Bits> adj;

    UndirectedGraph() = default;
    explicit UndirectedGraph(int n_) : n(n_), adj(n_, Bits(n_)) {}

    bool has_edge(int u, int v) const { return adj[u].test(v); }
    void add_edge(int u, int v) {
        adj[u].set(v);
        adj[v].set(u);
    }
    void toggle_edge(int u, int v) {
        if (has_edge(u, v)) {
            adj[u].reset(v);
            adj[v].reset(u);
        } else add_edge(u, v);
    }
    int degree(int v) const { return adj[v].count(); }
};

// The (3,12)-cage on 63+63 vertices from its LCF word, self-verified
// (3-regular bipartite, girth exactly 12); nullopt if verification fails.
std::optional<BipartiteGraph> tutte_12_cage();

// random graph conditioned on every degree being even
UndirectedGraph random_even_graph(int n, double density, uint64_t seed);

// undirected circulant (i ~ i +- 1..m mod n), 2m-regular
UndirectedGraph circulant_graph(int n, int m);

} // namespace powham

#endif

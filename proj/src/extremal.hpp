#ifndef POWHAM_EXTREMAL_HPP
#define POWHAM_EXTREMAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "generators.hpp"
#include "params.hpp"
#include "tournament.hpp"

namespace powham {

// point-line incidence graph of the projective plane over Z_q, q prime:
// (q^2+q+1) + (q^2+q+1) vertices, (q+1)-regular, girth 6
BipartiteGraph incidence_graph_pg(int q);

// orientation with in-degree = out-degree = degree/2 at every vertex, via
// Eulerian circuits per component; throws OddDegree
std::vector<std::pair<int, int>> eulerian_regular_completion(const UndirectedGraph &g);

// Iteratively removes vertices of degree < half the running average, then
// equalizes the parts (odd sizes). Postconditions: min degree >= final
// average / 4 and max degree <= the original max.
BipartiteGraph trim_to_min_degree(const BipartiteGraph &g);

enum class ConstructionKind { krr_free, cube_free };

struct ConstructionCertificate {
    ConstructionKind kind = ConstructionKind::krr_free;
    BipartiteGraph input_graph;
    int r_param = 0; // krr_free: r = ceil((k-1)/2)
    int d_param = 0; // cube_free: regular degree of the input
    int t_param = 0; // part size; n = 2t+1
    int semidegree = 0;
    bool obstruction_checked = false;
    bool degenerate = false; // r = 1 or empty input graph
    std::vector<std::pair<int, int>> type1_edges, type2_edges; // cube_free
};

// Vertex layout of both constructions: part A = [0,t), part B = [t,2t),
// special vertex v = 2t.

// rotational tournaments inside each part, input-graph edges A -> B, the
// rest B -> A, and a special vertex with A -> v -> B
std::pair<Tournament, ConstructionCertificate>
build_krr_free_tournament(const BipartiteGraph &g, int k);

// the cube-free construction: B -> v -> A, rotational B, type I edges inside
// the input graph's neighborhoods, forced type II edges, Eulerian completion
std::pair<Tournament, ConstructionCertificate>
build_cube_free_tournament(const BipartiteGraph &g, int d_odd);

struct VerdictCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Verdict {
    bool pass = true;
    std::vector<VerdictCheck> checks;
};

Verdict verify_construction(const Tournament &t, const ConstructionCertificate &cert);

} // namespace powham

#endif

#ifndef POWHAM_BRIDGE_HPP
#define POWHAM_BRIDGE_HPP

#include <optional>
#include <string>
#include <vector>

#include "chain.hpp"
#include "params.hpp"
#include "structure.hpp"
#include "tournament.hpp"

namespace powham {

// The sparse-cut decomposition: sides A/B, remainder R with its
// classification, the chain collections inside the remainder classes, and
// the reference ordering pi over the chained remainder vertices.
struct SidePartition {
    Bits a, b, r;
    Bits r_bad, r_a, r_b, r_good;
    Bits x, y; // X = A u (R_A \ R_good), Y = B u (R_B \ R_good)
    int d_param = 0;
    double cut_delta = 0; // 4 e(A',B') / n^2 of the dispatch cut
    int defect_a = 0, defect_b = 0;

    std::vector<Chain> chains_bad, chains_a, chains_b;
    Bits res_bad, res_a, res_b; // R' sets (chain residuals)
    VertexSeq pi;               // V(chains_a) then V(chains_b), chain order
};

struct Bridge {
    VertexSeq seq;
    Side from_side = Side::a, to_side = Side::b;
    int side_vertex_count = 0; // |seq cap (A u B)|
};

// Strips the irregular vertices off the sparse cut's two sides; returns a
// seed partition (a, b, r only). DegenerateStrip if a side loses half.
SidePartition prepare_partition(const Tournament &t, const ParameterProfile &p);

// Fills the remainder classification and the chain collections.
SidePartition classify_remainder(const Tournament &t, SidePartition seed,
                                 const ParameterProfile &p);

struct CountingPair {
    int x0 = -1, y0 = -1;
    Bits y_of_x0, x_of_y0;
    double delta = 0;
};

// The counting-lemma witnesses: x0 with |Y(x0)| >= delta|Y|/8 and y0 with
// |X(y0)| >= delta|X|/8, by exhaustive scan.
CountingPair counting_pairs(const Tournament &t, const Bits &x, const Bits &y,
                            const ParameterProfile &p);

struct CrossingResult {
    VertexSeq seq; // x_1..x_k, y_1..y_k
    // per recursion level: (delta, delta_1, delta_2) actually measured
    std::vector<std::array<double, 3>> level_densities;
};

// A k-power of a path crossing from X to Y, by the recursive construction.
// Odd k runs the k+1 machinery and truncates. Throws RecursionFailed (as
// NotFound) with the failing depth and stage in the message.
CrossingResult find_crossing_power(const Tournament &t, const Bits &x, const Bits &y,
                                   const ParameterProfile &p);

struct BridgeCover {
    bool ok = false;
    std::vector<Bridge> bridges;
    int count_ab = 0, count_ba = 0;
    std::string failed; // staged failure description
    std::vector<StageRecord> stages;
    Bits used; // all bridge vertices
};

// Stages (i)-(iii): offside cover, A->B bridges through R_good, chain
// extension, bad-residual cover, and balancing.
BridgeCover build_bridge_cover(const Tournament &t, const SidePartition &sp,
                               const ParameterProfile &p);

// Spanning chains of the bridge-free sides plus the cyclic linking pattern.
PipelineResult assemble_from_bridges(const Tournament &t, const SidePartition &sp,
                                     const std::vector<Bridge> &bridges,
                                     const ParameterProfile &p);

struct MainResult {
    PipelineResult pipeline;
    std::string branch; // "oracle", "cut-dense", "bridge", "cut-dense,bridge", ...
    std::optional<SearchOutcome> oracle_outcome;
    std::optional<BridgeCover> bridge_cover; // last cover emitted, if any
};

// Top-level dispatcher: exact oracle for small n, then the dense or sparse
// pipeline by cut density, retrying the other branch on staged failure.
MainResult main_power_hamilton(const Tournament &t, int k, const ParameterProfile &p);

} // namespace powham

#endif

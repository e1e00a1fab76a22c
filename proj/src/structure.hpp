#ifndef POWHAM_STRUCTURE_HPP
#define POWHAM_STRUCTURE_HPP

#include <optional>
#include <vector>

#include "bipartite.hpp"
#include "bits.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "rng.hpp"
#include "tournament.hpp"

namespace powham {

struct CutWitness {
    Bits part_x, part_y;
    long long forward_edges = 0;
    double density = 0; // forward_edges / (|X| * |Y|)
    bool exact = false; // true: global minimizer; false: heuristic upper bound
};

enum class CutMode { exact, heuristic };

// Minimum forward density over balanced (ordered) partitions. Exact mode
// enumerates all balanced splits (n <= exact_cap or TooLargeForExact);
// heuristic mode runs seeded multi-start pair-swap local search and returns
// an upper bound on the true minimum.
CutWitness balanced_cut_density(const Tournament &t, CutMode mode,
                                const SearchBudget &budget = SearchBudget::unlimited(),
                                uint64_t seed = 1, int exact_cap = 22, int restarts = 32);

struct CutBoundCheck {
    bool ok = false;
    std::optional<CutWitness> counterexample; // first partition below delta/16
    long long partitions_checked = 0;
    bool exhaustive = false;
};

// Checks e(X,Y) >= (delta/16)|X||Y| over all partitions (exact for small n,
// sampled otherwise). Throws HypothesisUnverifiable when the lemma's own
// hypothesis fails or cannot be checked within budget.
CutBoundCheck check_general_cut_bound(const Tournament &t, double delta,
                                      const SearchBudget &budget = SearchBudget::unlimited(),
                                      uint64_t seed = 1);

// ---- apartness ------------------------------------------------------------

struct ApartCollection {
    std::vector<std::vector<int>> sets;
    VertexSeq ordering; // pi
    int radius = 0;
};

// pairwise distance in `ordering` between vertices of distinct sets is > radius
// (vertices outside the ordering's support are ignored)
bool apartness(const std::vector<std::vector<int>> &sets, const VertexSeq &ordering, int radius);

// all ordering vertices within distance <= radius of some element of a
std::vector<int> interval_hull(const std::vector<int> &a, const VertexSeq &ordering, int radius);

// Removes the union of the collection's sets from the r1-power p; the result
// is asserted to be an (r1-r2)-power. PreconditionFailed if p is not an
// r1-power, the collection is not r1-apart in p, or some set exceeds r2.
VertexSeq delete_sparse_sets(const Tournament &t, const VertexSeq &p,
                             const ApartCollection &collection, int r1, int r2);

// ---- KST intersection ------------------------------------------------------

struct KstResult {
    std::vector<int> indices;
    Bits intersection;
};

// k sets among `sets` (subsets of a ground set of size ground_n, each of size
// >= alpha * ground_n) whose intersection has size >= (alpha/e)^k * ground_n.
KstResult kst_intersect(const std::vector<Bits> &sets, int ground_n, int k, double alpha,
                        const SearchBudget &budget = SearchBudget::unlimited());

// ---- head/tail extraction ---------------------------------------------------

// A k-set inside s passing is_head_tail against ground, found per the
// inclusion-exclusion argument (transitive core + KST on neighborhoods) with
// a direct greedy fallback. Throws NotFound in desk mode only.
std::vector<int> find_head_tail_in(const Tournament &t, const Bits &s, const Bits &ground,
                                   HeadTail kind, const ParameterProfile &p);

// ---- dependent random choice -----------------------------------------------

struct DrcAudit {
    long long subsets_checked = 0;
    long long bad_subsets = 0;
    bool exhaustive = false;
    double bad_fraction = 0;
    double allowed_fraction = 0; // 1 / s^k
    int retries_used = 0;
};

struct DrcResult {
    Bits u; // subset of the requested side
    DrcAudit audit;
};

enum class Side { a, b };

// U on `side` with |U| >= s such that the audited fraction of k-subsets of U
// with fewer than m common neighbors on the other side is < 1/s^k.
DrcResult drc_select(const BipartiteGraph &g, Side side, const ParameterProfile &p,
                     int max_retries = 16);

// ---- transitive k-set search helper -----------------------------------------

// Requirements for a transitive k-set drawn from a pool: optional floors on
// the common in-/out-neighborhood inside given grounds. Used across the
// chain and bridge engines.
struct KsetGoal {
    int k = 1;
    const Bits *in_ground = nullptr;
    double in_floor = 0;
    const Bits *out_ground = nullptr;
    double out_floor = 0;
};

struct KsetFound {
    VertexSeq order; // domination order
    Bits in_witness, out_witness;
};

std::optional<KsetFound> find_transitive_kset(const Tournament &t, const Bits &pool,
                                              const KsetGoal &goal, uint64_t node_cap = 20000);

} // namespace powham

#endif

#ifndef POWHAM_TOURNAMENT_HPP
#define POWHAM_TOURNAMENT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "params.hpp"

namespace powham {

// Ordered list of distinct vertex ids. Carrier for powers of paths/cycles,
// chains and bridge sequences; distinctness is enforced by the checkers.
using VertexSeq = std::vector<int>;

// Dense orientation matrix over n labeled vertices, with both out- and
// in-neighborhoods stored row-wise so every common-neighborhood query is
// word-parallel. Immutable after construction in all pipeline code.
struct Tournament {
    int n = 0;
    std::vector<Bits> out; // out[v].test(u) <=> v->u
    std::vector<Bits> in;  // in[v].test(u)  <=> u->v

    Tournament() = default;
    explicit Tournament(int n_) : n(n_), out(n_, Bits(n_)), in(n_, Bits(n_)) {}

    bool edge(int u, int v) const { return out[u].test(v); }

    // orient u->v, overwriting any previous orientation of the pair
    void set_edge(int u, int v) {
        out[u].set(v);
        in[v].set(u);
        out[v].reset(u);
        in[u].reset(v);
    }

    void flip_edge(int u, int v) {
        if (edge(u, v)) set_edge(v, u);
        else set_edge(u, v);
    }

    int out_degree(int v) const { return out[v].count(); }
    int in_degree(int v) const { return in[v].count(); }

    // throws InvariantViolation unless every pair has exactly one orientation
    void validate() const;

    Tournament reversed() const;

    // subtournament on s; idmap (optional) receives new-id -> old-id
    Tournament induced(const Bits &s, std::vector<int> *idmap = nullptr) const;
};

Tournament build_tournament(int n, const std::vector<std::pair<int, int>> &edges);

int min_semidegree(const Tournament &t);

// least d with all degrees >= floor(n/2) - d; 0 exactly for regular
// tournaments (odd n)
int regularity_defect(const Tournament &t);

enum class Direction { in, out };

Bits common_neighbors(const Tournament &t, const Bits &s, Direction dir, const Bits &restrict_to);

// common out/in-neighborhood of the listed vertices, intersected with restrict_to
Bits common_out(const Tournament &t, const std::vector<int> &vs, const Bits &restrict_to);
Bits common_in(const Tournament &t, const std::vector<int> &vs, const Bits &restrict_to);

enum class SeqKind { path, cycle };

// true iff seq (distinct vertices) carries every forward edge v_i -> v_j for
// i < j <= i+k, cyclically for kind=cycle. Throws DegenerateCycle for cycles
// of length <= k.
bool verify_power_seq(const Tournament &t, const VertexSeq &seq, int k, SeqKind kind);

// domination order of a transitive set (out-degree sort inside the induced
// subtournament, then verification), or nullopt if the set is not transitive
std::optional<VertexSeq> transitive_order(const Tournament &t, const std::vector<int> &set);

inline bool is_transitive_set(const Tournament &t, const std::vector<int> &set) {
    return transitive_order(t, set).has_value();
}

enum class HeadTail { head, tail };

struct HeadTailResult {
    bool ok = false;
    Bits witness; // the common neighborhood inside ground
};

// core check at an explicit set order (|s| = order); used by the chain and
// bridge machinery at orders other than profile.k
HeadTailResult head_tail_check(const Tournament &t, const std::vector<int> &s, const Bits &ground,
                               HeadTail kind, const ParameterProfile &p, int order);

// spec surface: requires |s| == profile.k (WrongSize otherwise)
HeadTailResult is_head_tail(const Tournament &t, const std::vector<int> &s, const Bits &ground,
                            HeadTail kind, const ParameterProfile &p);

// chain check at explicit order: seq is an order-power of a path, its first
// `order` vertices form an a-tail and its last `order` a b-head
bool chain_check(const Tournament &t, const VertexSeq &seq, const Bits &a, const Bits &b,
                 const ParameterProfile &p, int order);

bool is_chain(const Tournament &t, const VertexSeq &seq, const Bits &a, const Bits &b,
              const ParameterProfile &p);

} // namespace powham

#endif

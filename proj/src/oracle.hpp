#ifndef POWHAM_ORACLE_HPP
#define POWHAM_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "params.hpp"
#include "tournament.hpp"

namespace powham {

struct SearchBudget {
    uint64_t max_nodes = 0;  // 0 = unlimited
    uint64_t max_millis = 0; // 0 = unlimited; wall-clock, CLI safety only
    uint64_t memo_cap = 1u << 20;

    static SearchBudget unlimited() { return SearchBudget{0, 0, 1u << 20}; }
    static SearchBudget nodes(uint64_t cap) { return SearchBudget{cap, 0, 1u << 20}; }
};

enum class SearchStatus { found, exhausted_none, budget_exceeded };

const char *search_status_name(SearchStatus s);

struct SearchOutcome {
    SearchStatus status = SearchStatus::budget_exceeded;
    std::optional<VertexSeq> witness;
    uint64_t nodes_expanded = 0;
};

// Exact backtracking search for the k-th power of a Hamilton path/cycle.
// Found witnesses always re-pass verify_power_seq before being returned;
// exhausted_none is only reported when no budget cap fired.
SearchOutcome search_power_hamilton(const Tournament &t, int k, SeqKind kind,
                                    const SearchBudget &budget = SearchBudget::unlimited());

// Longest k-th power of a path found by greedy bidirectional extension with
// bounded backtracking, restricted to `pool`. Never throws; returns the best
// sequence found (possibly empty for an empty pool).
VertexSeq find_long_power_path_in(const Tournament &t, int k, const Bits &pool,
                                  const SearchBudget &budget, uint64_t seed);

// Spec surface: asserts the mode's length floor (strict: n/2^{8k}) and
// throws FloorNotMet below it. k=1 returns a spanning path by insertion.
VertexSeq find_long_power_path(const Tournament &t, int k, const ParameterProfile &p,
                               const SearchBudget &budget = SearchBudget::unlimited());

// Transitive k-subset via greedy-first exhaustive descent; NotFound only
// after the full space is exhausted.
VertexSeq find_transitive_set(const Tournament &t, int k);

struct FractionEstimate {
    double fraction = 0;
    bool exact = true;
    long long favorable = 0;
    long long total = 0;
    double ci_low = 0, ci_high = 0; // sampling mode only, 95% normal approx
};

// Exact fraction of k-subsets inducing transitive tournaments when C(n,k)
// <= exact_cap; otherwise unbiased sampling with a reported interval.
FractionEstimate transitive_fraction(const Tournament &t, int k, long long exact_cap = 2000000,
                                     long long samples = 200000, uint64_t seed = 1);

// throws TooLargeForExact instead of sampling
FractionEstimate transitive_fraction_exact(const Tournament &t, int k,
                                           long long exact_cap = 2000000);

// independent oracle for the k=1 cycle criterion (Camion)
bool strongly_connected(const Tournament &t);

// spanning directed Hamilton path by the classical insertion argument
VertexSeq insertion_hamilton_path(const Tournament &t);

} // namespace powham

#endif

#ifndef POWHAM_CHAIN_HPP
#define POWHAM_CHAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "bits.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "structure.hpp"
#include "tournament.hpp"

namespace powham {

// A validated (A,B,order)-chain: seq is an order-power of a path whose first
// `order` vertices form an A-tail and last `order` a B-head.
struct Chain {
    VertexSeq seq;
    int order = 0;
    Bits tail_ground, head_ground;
    Bits tail_witness, head_witness;

    std::vector<int> first(int c) const {
        return std::vector<int>(seq.begin(), seq.begin() + c);
    }
    std::vector<int> last(int c) const { return std::vector<int>(seq.end() - c, seq.end()); }
};

// Linking-lemma output: a k-power path from M to N whose interior splits
// into k-sets that are radius-apart in the reference ordering.
struct Linkage {
    VertexSeq path; // m ... blobs ... n
    std::vector<std::vector<int>> internal_sets;
};

struct StageRecord {
    std::string name;
    std::string status; // ok | failed | skipped
    std::string detail;
    std::vector<std::pair<std::string, double>> margins;
};

struct PipelineResult {
    bool found = false;
    VertexSeq witness;
    std::string failed_stage;
    std::vector<StageRecord> stages;
    int restarts_used = 0;

    StageRecord &stage(const std::string &name) {
        stages.push_back(StageRecord{name, "ok", "", {}});
        return stages.back();
    }
};

struct PartitionResult {
    std::vector<Chain> chains;
    Bits residual;
    bool stalled = false;
    std::string stall_detail;
};

// Partition s into vertex-disjoint (a,b,order)-chains plus a residual of
// size <= profile cap, by repeated long-power-path extraction and head/tail
// trimming. Does not throw on stall; see the spec-surface wrapper.
PartitionResult partition_chains_at_order(const Tournament &t, const Bits &s, const Bits &a,
                                          const Bits &b, const ParameterProfile &p, int order,
                                          uint64_t seed);

// spec surface (order = profile.k); throws ExtractionStalled (as
// PreconditionFailed carrier) when neither chains nor an acceptable residual
// can be produced
PartitionResult partition_into_chains(const Tournament &t, const Bits &s, const Bits &a,
                                      const Bits &b, const ParameterProfile &p);

// One linking request between ordered k-sets m -> n through `allowed`
// interior vertices, blobs kept `radius`-apart in `ordering`.
struct LinkRequest {
    VertexSeq m, n;
    const VertexSeq *ordering = nullptr;
    int radius = 0;
    int blob_size = 0;
};

std::optional<Linkage> link_internal(const Tournament &t, const Bits &allowed,
                                     const LinkRequest &req, const ParameterProfile &p,
                                     std::string *fail_stage);

// spec surface; throws CaseSplitFailed/LayeringCollapsed via Error codes
Linkage link(const Tournament &t, const std::vector<int> &m, const std::vector<int> &nset,
             const VertexSeq &ordering, const Bits &forbidden, const ParameterProfile &p);

// Covers each residual vertex w with a validated chain X + {w} + Y drawn
// from the interiors of `chains`, keeping the used sets radius-apart in the
// concatenated chain ordering. Returns the cover chains and the updated
// forbidden set; used vertices are recorded in `donated`.
struct CoverResult {
    std::vector<Chain> cover_chains;
    Bits forbidden;
    std::vector<std::vector<int>> used_sets; // the X and Y k-sets
    bool ok = false;
    std::string fail_detail;
    int failed_vertex = -1;
};

CoverResult cover_residual(const Tournament &t, const std::vector<Chain> &chains,
                           const Bits &residual, const ParameterProfile &p);

// Full cut-dense pipeline: partition -> cover -> cyclic linking -> assembly.
PipelineResult cut_dense_power_hamilton(const Tournament &t, const ParameterProfile &p);

// Spanning chain of the `pool` subtournament at the given order (the open
// variant of the pipeline: all links but the closing one). When `leftover`
// is non-null, residual vertices that resist absorption are parked there and
// the chain spans pool minus the leftovers.
std::optional<Chain> spanning_chain_in(const Tournament &t, const Bits &pool, int order,
                                       const ParameterProfile &p, PipelineResult *trace,
                                       std::vector<int> *leftover = nullptr);

// spec surface at order profile.k over the whole tournament
Chain spanning_chain(const Tournament &t, const ParameterProfile &p);

} // namespace powham

#endif

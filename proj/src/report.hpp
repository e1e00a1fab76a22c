#ifndef POWHAM_REPORT_HPP
#define POWHAM_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chain.hpp"
#include "params.hpp"
#include "tournament.hpp"

namespace powham {

// Structured outcome of a CLI run, serialized as a single JSON document.
// witness present <=> outcome "Found"; verify-report mode re-checks the
// witness against the input digest.
struct Report {
    std::string command;
    std::string input_digest;
    ParameterProfile profile;
    std::string outcome; // Found | ExhaustedNone | BudgetExceeded | StagedFailure | ...
    std::string branch;
    std::vector<StageRecord> stages;
    std::optional<VertexSeq> witness;
    std::string witness_kind; // "cycle" | "path" | "chain"
    int n = 0;
    int64_t wall_millis = 0;
    uint64_t seed = 0;
    uint64_t nodes_expanded = 0;

    std::string to_json() const;
    static Report from_json(const std::string &text);
};

// exit codes per the CLI contract
enum ExitCode {
    exit_found = 0,
    exit_usage = 1,
    exit_refuted = 2,
    exit_staged = 3,
    exit_budget = 4,
};

int exit_code_for(const std::string &outcome);

} // namespace powham

#endif

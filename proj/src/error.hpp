#ifndef POWHAM_ERROR_HPP
#define POWHAM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace powham {

// Structured error codes. Precondition and invariant violations throw;
// pipeline-level "staged" failures are data, not exceptions (see chain.hpp,
// bridge.hpp).
enum class Errc {
    self_loop,
    conflicting_orientation,
    missing_pair,
    out_of_range,
    empty_query_set,
    degenerate_cycle,
    wrong_size,
    too_short,
    too_small,
    floor_not_met,
    not_found,
    too_large_for_exact,
    hypothesis_unverifiable,
    precondition_failed,
    retries_exhausted,
    bad_modulus,
    odd_degree,
    not_prime,
    parts_unequal,
    parts_even,
    krr_found,
    not_regular,
    degree_even,
    girth_too_small,
    double_orientation,
    verdict_failed,
    parse_error,
    invariant_violation,
};

const char *errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string &msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string &msg) {
    if (!cond) fail(code, msg);
}

} // namespace powham

#endif

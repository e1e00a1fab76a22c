#include "error.hpp"

namespace powham {

const char *errc_name(Errc c) {
    switch (c) {
        case Errc::self_loop: return "SelfLoop";
        case Errc::conflicting_orientation: return "ConflictingOrientation";
        case Errc::missing_pair: return "MissingPair";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::empty_query_set: return "EmptyQuerySet";
        case Errc::degenerate_cycle: return "DegenerateCycle";
        case Errc::wrong_size: return "WrongSize";
        case Errc::too_short: return "TooShort";
        case Errc::too_small: return "TooSmall";
        case Errc::floor_not_met: return "FloorNotMet";
        case Errc::not_found: return "NotFound";
        case Errc::too_large_for_exact: return "TooLargeForExact";
        case Errc::hypothesis_unverifiable: return "HypothesisUnverifiable";
        case Errc::precondition_failed: return "PreconditionFailed";
        case Errc::retries_exhausted: return "RetriesExhausted";
        case Errc::bad_modulus: return "BadModulus";
        case Errc::odd_degree: return "OddDegree";
        case Errc::not_prime: return "NotPrime";
        case Errc::parts_unequal: return "PartsUnequal";
        case Errc::parts_even: return "PartsEven";
        case Errc::krr_found: return "KrrFound";
        case Errc::not_regular: return "NotRegular";
        case Errc::degree_even: return "DegreeEven";
        case Errc::girth_too_small: return "GirthTooSmall";
        case Errc::double_orientation: return "DoubleOrientation";
        case Errc::verdict_failed: return "VerdictFailed";
        case Errc::parse_error: return "ParseError";
        case Errc::invariant_violation: return "InvariantViolation";
    }
    return "UnknownError";
}

} // namespace powham

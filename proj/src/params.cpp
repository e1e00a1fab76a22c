#include "params.hpp"

#include "error.hpp"

namespace powham {

static void check_profile(const ParameterProfile &p) {
    require(p.k >= 1, Errc::precondition_failed, "k must be >= 1");
    require(p.delta > 0 && p.delta <= 1, Errc::precondition_failed, "delta must be in (0,1]");
    require(p.head_tail_fraction > 0 && p.head_tail_fraction <= 1, Errc::precondition_failed,
            "headTailFraction must be in (0,1]");
    require(p.link_neighborhood_fraction > 0 && p.link_neighborhood_fraction <= 1,
            Errc::precondition_failed, "linkNeighborhoodFraction must be in (0,1]");
    require(p.chain_residual_cap >= 1, Errc::precondition_failed, "chainResidualCap must be >= 1");
}

ParameterProfile ParameterProfile::strict(int k, double delta, uint64_t seed) {
    ParameterProfile p;
    p.k = k;
    p.delta = delta;
    p.mode = Mode::strict;
    p.rng_seed = seed;
    p.head_tail_fraction = std::pow(2.0, -6.0 * k);
    p.apart_radius = 10 * k;
    p.link_neighborhood_fraction = std::pow(2.0, -20.0 * k);
    p.chain_residual_cap = std::pow(2.0, 200.0 * k);
    p.drc_s = std::pow(2.0, 30.0 * k);
    p.drc_m = std::pow(2.0, 30.0 * k);
    p.bridge_c = std::pow(2.0, 30.0 * k);
    p.desk_floor = 0;
    p.desk_gate = 0;
    p.chain_order_factor = 3;
    p.pipeline_restarts = 1;
    check_profile(p);
    return p;
}

ParameterProfile ParameterProfile::desk(int k, double delta, uint64_t seed) {
    ParameterProfile p;
    p.k = k;
    p.delta = delta;
    p.mode = Mode::desk;
    p.rng_seed = seed;
    p.head_tail_fraction = std::pow(2.0, -6.0 * k);
    p.apart_radius = 10 * k;
    p.link_neighborhood_fraction = std::pow(2.0, -20.0 * k);
    p.desk_gate = std::max(4 * k, 16);
    p.chain_residual_cap = p.desk_gate;
    p.drc_s = p.desk_gate;
    p.drc_m = p.desk_gate;
    p.bridge_c = p.desk_gate;
    p.desk_floor = std::max(k + 2, 4);
    p.chain_order_factor = 2;
    p.pipeline_restarts = 4;
    check_profile(p);
    return p;
}

} // namespace powham

#ifndef POWHAM_PARAMS_HPP
#define POWHAM_PARAMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace powham {

enum class Mode { strict, desk };

// Every threshold the source lemmas state as a function of k and delta, in
// one place. Strict mode evaluates the literal formulas (vacuous or
// astronomically large at desk-scale n, but exactly reproducible); desk mode
// replaces each n/2^f(k) threshold by max(formula, desk_floor) and each
// 2^g(k) cardinality gate by a configurable small value.
struct ParameterProfile {
    int k = 2;
    double delta = 0.2;
    Mode mode = Mode::desk;
    uint64_t rng_seed = 1;

    // strict-formula anchors (populated by strict()/desk())
    double head_tail_fraction = 0;       // 2^-6k of the ground set
    int apart_radius = 0;                // 10k
    double link_neighborhood_fraction = 0; // 2^-20k of n
    double chain_residual_cap = 0;       // 2^200k (strict) or small desk cap
    double drc_s = 0, drc_m = 0;         // 2^30k
    double bridge_c = 0;                 // 2^30k

    // desk knobs
    int desk_floor = 0;        // floor for neighborhood-size thresholds
    int desk_gate = 0;         // replacement for 2^g(k) cardinality gates
    int chain_order_factor = 3; // pipeline chains have order factor*k
    double dispatch_density = 0.05; // dense/sparse branch split
    int pipeline_restarts = 1;

    static ParameterProfile strict(int k, double delta = 0.2, uint64_t seed = 1);
    static ParameterProfile desk(int k, double delta = 0.2, uint64_t seed = 1);

    bool is_strict() const { return mode == Mode::strict; }

    // ---- threshold evaluation -------------------------------------------

    // head/tail: common neighborhood inside a ground set of size g, for a
    // transitive set of size s ("|A|/2^{6k}" with k = |S|).
    double head_tail_threshold(int ground_size, int set_size) const {
        double paper = ground_size * std::pow(2.0, -6.0 * set_size);
        if (is_strict()) return paper;
        return std::max(paper, (double)desk_floor);
    }

    // linking: common out/in-neighborhood of the k-set endpoints ("n/2^{20k}").
    double link_threshold(int n) const {
        double paper = n * std::pow(2.0, -20.0 * k);
        if (is_strict()) return paper;
        return std::max(paper, (double)desk_floor);
    }

    // partition lemma residual bound ("at most 2^{200k}")
    double residual_cap() const { return chain_residual_cap; }

    // the 1/20 side-degree hypothesis of the partition lemma
    double side_degree_threshold(int side_size) const { return side_size / 20.0; }

    // cardinality gate 2^{g(k)}; strict callers pass the literal exponent.
    double gate(double strict_exponent_bits) const {
        if (is_strict()) return std::pow(2.0, strict_exponent_bits);
        return (double)desk_gate;
    }

    // order of the chains the Hamilton-power pipelines partition into
    int pipeline_chain_order() const { return chain_order_factor * k; }

    std::string mode_name() const { return is_strict() ? "strict" : "desk"; }
};

} // namespace powham

#endif

#include "report.hpp"

#include <json.hpp>

#include "error.hpp"

namespace powham {

using nlohmann::json;

namespace {

json profile_json(const ParameterProfile &p) {
    return json{{"k", p.k},
                {"delta", p.delta},
                {"mode", p.mode_name()},
                {"rng_seed", p.rng_seed},
                {"head_tail_fraction", p.head_tail_fraction},
                {"apart_radius", p.apart_radius},
                {"link_neighborhood_fraction", p.link_neighborhood_fraction},
                {"chain_residual_cap", p.chain_residual_cap},
                {"drc_s", p.drc_s},
                {"drc_m", p.drc_m},
                {"bridge_c", p.bridge_c},
                {"desk_floor", p.desk_floor},
                {"desk_gate", p.desk_gate},
                {"chain_order_factor", p.chain_order_factor},
                {"dispatch_density", p.dispatch_density},
                {"pipeline_restarts", p.pipeline_restarts}};
}

ParameterProfile profile_from_json(const json &j) {
    ParameterProfile p = j.at("mode").get<std::string>() == "strict"
                             ? ParameterProfile::strict(j.at("k").get<int>())
                             : ParameterProfile::desk(j.at("k").get<int>());
    p.delta = j.at("delta").get<double>();
    p.rng_seed = j.at("rng_seed").get<uint64_t>();
    p.head_tail_fraction = j.at("head_tail_fraction").get<double>();
    p.apart_radius = j.at("apart_radius").get<int>();
    p.link_neighborhood_fraction = j.at("link_neighborhood_fraction").get<double>();
    p.chain_residual_cap = j.at("chain_residual_cap").get<double>();
    p.drc_s = j.at("drc_s").get<double>();
    p.drc_m = j.at("drc_m").get<double>();
    p.bridge_c = j.at("bridge_c").get<double>();
    p.desk_floor = j.at("desk_floor").get<int>();
    p.desk_gate = j.at("desk_gate").get<int>();
    p.chain_order_factor = j.at("chain_order_factor").get<int>();
    p.dispatch_density = j.at("dispatch_density").get<double>();
    p.pipeline_restarts = j.at("pipeline_restarts").get<int>();
    return p;
}

} // namespace

std::string Report::to_json() const {
    json j;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["profile"] = profile_json(profile);
    j["outcome"] = outcome;
    j["branch"] = branch;
    j["n"] = n;
    j["wall_millis"] = wall_millis;
    j["seed"] = seed;
    j["nodes_expanded"] = nodes_expanded;
    j["stages"] = json::array();
    for (const StageRecord &s : stages) {
        json js{{"name", s.name}, {"status", s.status}, {"detail", s.detail}};
        js["margins"] = json::object();
        for (auto &[k, v] : s.margins) js["margins"][k] = v;
        j["stages"].push_back(js);
    }
    if (witness) {
        j["witness"] = *witness;
        j["witness_kind"] = witness_kind;
    }
    return j.dump(2) + "\n";
}

Report Report::from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        fail(Errc::parse_error, std::string("report JSON: ") + e.what());
    }
    Report r;
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.profile = profile_from_json(j.at("profile"));
    r.outcome = j.at("outcome").get<std::string>();
    r.branch = j.value("branch", "");
    r.n = j.at("n").get<int>();
    r.wall_millis = j.at("wall_millis").get<int64_t>();
    r.seed = j.at("seed").get<uint64_t>();
    r.nodes_expanded = j.value("nodes_expanded", (uint64_t)0);
    for (const auto &js : j.at("stages")) {
        StageRecord s;
        s.name = js.at("name").get<std::string>();
        s.status = js.at("status").get<std::string>();
        s.detail = js.value("detail", "");
        for (auto it = js.at("margins").begin(); it != js.at("margins").end(); ++it)
            s.margins.emplace_back(it.key(), it.value().get<double>());
        r.stages.push_back(s);
    }
    if (j.contains("witness")) {
        r.witness = j.at("witness").get<VertexSeq>();
        r.witness_kind = j.value("witness_kind", "cycle");
    }
    return r;
}

int exit_code_for(const std::string &outcome) {
    if (outcome == "Found" || outcome == "VerifiedPass") return exit_found;
    if (outcome == "ExhaustedNone" || outcome == "RefutationSound") return exit_refuted;
    if (outcome == "BudgetExceeded") return exit_budget;
    return exit_staged;
}

} // namespace powham

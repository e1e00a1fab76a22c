// powham: generate, analyze, and search tournaments for k-th powers of
// Hamilton cycles; build and verify the extremal lower-bound constructions.
//
// Exit codes: 0 found/verified, 2 sound refutation, 3 staged failure,
// 4 budget exceeded, 1 usage error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bridge.hpp"
#include "chain.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "report.hpp"
#include "structure.hpp"

using namespace powham;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct CommonOpts {
    int k = 2;
    uint64_t seed = 1;
    std::string mode = "desk";
    double delta = 0.2;
    uint64_t budget_nodes = 0;
    uint64_t budget_ms = 0;
    std::string profile_file;
    std::string out_path;
};

void add_common(CLI::App *cmd, CommonOpts &o) {
    cmd->add_option("--k", o.k, "power order");
    cmd->add_option("--seed", o.seed, "rng seed");
    cmd->add_option("--mode", o.mode, "strict|desk")->check(CLI::IsMember({"strict", "desk"}));
    cmd->add_option("--delta", o.delta, "cut-density parameter");
    cmd->add_option("--budget-nodes", o.budget_nodes, "search node cap (0 = unlimited)");
    cmd->add_option("--budget-ms", o.budget_ms, "wall clock cap in ms (0 = unlimited)");
    cmd->add_option("--profile", o.profile_file, "JSON profile overrides");
    cmd->add_option("--out", o.out_path, "report path (JSON)");
}

ParameterProfile make_profile(const CommonOpts &o) {
    ParameterProfile p = o.mode == "strict" ? ParameterProfile::strict(o.k, o.delta, o.seed)
                                            : ParameterProfile::desk(o.k, o.delta, o.seed);
    if (!o.profile_file.empty()) {
        json j = json::parse(read_file(o.profile_file));
        if (j.contains("head_tail_fraction")) p.head_tail_fraction = j["head_tail_fraction"];
        if (j.contains("apart_radius")) p.apart_radius = j["apart_radius"];
        if (j.contains("link_neighborhood_fraction"))
            p.link_neighborhood_fraction = j["link_neighborhood_fraction"];
        if (j.contains("chain_residual_cap")) p.chain_residual_cap = j["chain_residual_cap"];
        if (j.contains("drc_s")) p.drc_s = j["drc_s"];
        if (j.contains("drc_m")) p.drc_m = j["drc_m"];
        if (j.contains("bridge_c")) p.bridge_c = j["bridge_c"];
        if (j.contains("desk_floor")) p.desk_floor = j["desk_floor"];
        if (j.contains("desk_gate")) p.desk_gate = j["desk_gate"];
        if (j.contains("chain_order_factor")) p.chain_order_factor = j["chain_order_factor"];
        if (j.contains("dispatch_density")) p.dispatch_density = j["dispatch_density"];
        if (j.contains("pipeline_restarts")) p.pipeline_restarts = j["pipeline_restarts"];
    }
    return p;
}

// environment overrides apply to budget caps only
SearchBudget make_budget(const CommonOpts &o) {
    SearchBudget b;
    b.max_nodes = o.budget_nodes;
    b.max_millis = o.budget_ms;
    if (const char *env = std::getenv("POWHAM_BUDGET_NODES")) b.max_nodes = std::strtoull(env, nullptr, 10);
    if (const char *env = std::getenv("POWHAM_BUDGET_MS")) b.max_millis = std::strtoull(env, nullptr, 10);
    return b;
}

void emit_report(const CommonOpts &o, Report &rep, Clock::time_point t0) {
    rep.wall_millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    rep.seed = o.seed;
    std::string text = rep.to_json();
    if (!o.out_path.empty()) write_file(o.out_path, text);
    else std::cout << text;
}

int finish(const CommonOpts &o, Report &rep, Clock::time_point t0) {
    emit_report(o, rep, t0);
    std::cerr << rep.command << ": " << rep.outcome << "\n";
    return exit_code_for(rep.outcome);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"tournament Hamilton-power toolkit"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------------
    auto *gen = app.add_subcommand("generate", "write an instance to a file");
    CommonOpts gopt;
    std::string gkind, gout = "instance.txt", ggraph;
    int gn = 63, gq = 7, ghalf = 64, gforward = -1, gd = 1;
    int galigned = 2, greverse = 2, gmoderate = 8;
    gen->add_option("kind", gkind, "rotational|paley|random|two-cluster|krr-free|cube-free")
        ->required();
    gen->add_option("--n", gn, "vertex count");
    gen->add_option("--q", gq, "prime modulus (paley)");
    gen->add_option("--half", ghalf, "half size (two-cluster)");
    gen->add_option("--forward", gforward, "planted forward edges (two-cluster; -1 = auto)");
    gen->add_option("--aligned", galigned, "aligned remainder vertices (two-cluster)");
    gen->add_option("--reverse", greverse, "reverse remainder vertices (two-cluster)");
    gen->add_option("--moderate", gmoderate, "moderate remainder vertices (two-cluster)");
    gen->add_option("--graph", ggraph, "bipartite input file (krr-free, cube-free)");
    gen->add_option("--d", gd, "regular degree (cube-free)");
    gen->add_option("--file", gout, "output instance path");
    add_common(gen, gopt);

    // ---- analyze -----------------------------------------------------------
    auto *ana = app.add_subcommand("analyze", "semidegree, cut density, transitive fraction");
    CommonOpts aopt;
    std::string awhat, ain;
    std::string acut = "heuristic";
    ana->add_option("what", awhat, "semidegree|cut-density|transitive-fraction")->required();
    ana->add_option("--in", ain, "tournament file")->required();
    ana->add_option("--cut-mode", acut, "exact|heuristic");
    add_common(ana, aopt);

    // ---- oracle -------------------------------------------------------------
    auto *orc = app.add_subcommand("oracle", "exact Hamilton-power search");
    CommonOpts oopt;
    std::string oin, okind = "cycle";
    orc->add_option("--in", oin, "tournament file")->required();
    orc->add_option("--kind", okind, "path|cycle")->check(CLI::IsMember({"path", "cycle"}));
    add_common(orc, oopt);

    // ---- pipeline -------------------------------------------------------------
    auto *pip = app.add_subcommand("pipeline", "constructive Hamilton-power pipelines");
    CommonOpts popt;
    std::string pwhich, pin;
    pip->add_option("which", pwhich, "cut-dense|main")->required();
    pip->add_option("--in", pin, "tournament file")->required();
    add_common(pip, popt);

    // ---- construct-verify ------------------------------------------------------
    auto *cv = app.add_subcommand("construct-verify", "build a lower-bound tournament and verify");
    CommonOpts copt;
    std::string ckind, cgraph, csave;
    int cd = 1;
    cv->add_option("kind", ckind, "krr-free|cube-free")->required();
    cv->add_option("--graph", cgraph, "bipartite input file")->required();
    cv->add_option("--d", cd, "regular degree (cube-free)");
    cv->add_option("--save", csave, "also save the built tournament");
    add_common(cv, copt);

    // ---- batch ----------------------------------------------------------------
    auto *bat = app.add_subcommand("batch", "seed sweeps with a CSV summary");
    CommonOpts bopt;
    std::string btask = "pipeline-main", bgen = "random", bcsv = "sweep.csv", bdir;
    int bn = 63, bseeds = 50, bhalf = 64, bforward = -1;
    bat->add_option("--task", btask, "pipeline-main|pipeline-cut-dense|oracle-cycle");
    bat->add_option("--gen", bgen, "random|rotational|paley|two-cluster");
    bat->add_option("--n", bn, "vertex count");
    bat->add_option("--half", bhalf, "half size (two-cluster)");
    bat->add_option("--forward", bforward, "forward edges (two-cluster)");
    bat->add_option("--seeds", bseeds, "number of seeds (0 allowed)");
    bat->add_option("--csv", bcsv, "CSV output path");
    bat->add_option("--report-dir", bdir, "per-run report directory");
    add_common(bat, bopt);

    // ---- verify-report -----------------------------------------------------------
    auto *vr = app.add_subcommand("verify-report", "re-check a report witness against its input");
    std::string vrep, vin;
    vr->add_option("--report", vrep, "report JSON")->required();
    vr->add_option("--in", vin, "input instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    Clock::time_point t0 = Clock::now();
    try {
        if (gen->parsed()) {
            ParameterProfile p = make_profile(gopt);
            std::string text;
            if (gkind == "rotational") text = tournament_to_text(rotational_tournament(gn));
            else if (gkind == "paley") text = tournament_to_text(paley_tournament(gq));
            else if (gkind == "random") text = tournament_to_text(random_tournament(gn, gopt.seed));
            else if (gkind == "two-cluster") {
                TwoClusterSpec spec;
                spec.half = ghalf;
                spec.forward_edges = gforward;
                spec.aligned = galigned;
                spec.reverse = greverse;
                spec.moderate = gmoderate;
                text = tournament_to_text(two_cluster(spec, gopt.seed).t);
            } else if (gkind == "krr-free") {
                auto [tt, cert] = build_krr_free_tournament(load_bipartite(ggraph), gopt.k);
                text = tournament_to_text(tt);
            } else if (gkind == "cube-free") {
                auto [tt, cert] = build_cube_free_tournament(load_bipartite(ggraph), gd);
                text = tournament_to_text(tt);
            } else {
                std::cerr << "unknown generator kind: " << gkind << "\n";
                return exit_usage;
            }
            write_file(gout, text);
            std::cerr << "wrote " << gout << "\n";
            (void)p;
            return exit_found;
        }

        if (ana->parsed()) {
            ParameterProfile p = make_profile(aopt);
            std::string text = read_file(ain);
            Tournament t = tournament_from_text(text);
            Report rep;
            rep.command = "analyze " + awhat;
            rep.input_digest = digest_hex(text);
            rep.profile = p;
            rep.n = t.n;
            StageRecord st{awhat, "ok", "", {}};
            if (awhat == "semidegree") {
                st.margins.emplace_back("semidegree", min_semidegree(t));
                st.margins.emplace_back("regularity_defect", regularity_defect(t));
            } else if (awhat == "cut-density") {
                CutWitness w = balanced_cut_density(
                    t, acut == "exact" ? CutMode::exact : CutMode::heuristic, make_budget(aopt),
                    aopt.seed);
                st.margins.emplace_back("density", w.density);
                st.margins.emplace_back("forward_edges", (double)w.forward_edges);
                st.detail = w.exact ? "exact" : "heuristic upper bound";
            } else if (awhat == "transitive-fraction") {
                FractionEstimate fe = transitive_fraction(t, p.k);
                st.margins.emplace_back("fraction", fe.fraction);
                st.margins.emplace_back("favorable", (double)fe.favorable);
                st.margins.emplace_back("total", (double)fe.total);
                st.detail = fe.exact ? "exact" : "sampled";
            } else {
                std::cerr << "unknown analysis: " << awhat << "\n";
                return exit_usage;
            }
            rep.stages.push_back(st);
            rep.outcome = "VerifiedPass";
            return finish(aopt, rep, t0);
        }

        if (orc->parsed()) {
            ParameterProfile p = make_profile(oopt);
            std::string text = read_file(oin);
            Tournament t = tournament_from_text(text);
            SearchOutcome so = search_power_hamilton(
                t, p.k, okind == "cycle" ? SeqKind::cycle : SeqKind::path, make_budget(oopt));
            Report rep;
            rep.command = "oracle";
            rep.input_digest = digest_hex(text);
            rep.profile = p;
            rep.n = t.n;
            rep.outcome = search_status_name(so.status);
            rep.nodes_expanded = so.nodes_expanded;
            if (so.witness) {
                rep.witness = so.witness;
                rep.witness_kind = okind;
            }
            return finish(oopt, rep, t0);
        }

        if (pip->parsed()) {
            ParameterProfile p = make_profile(popt);
            std::string text = read_file(pin);
            Tournament t = tournament_from_text(text);
            Report rep;
            rep.command = "pipeline " + pwhich;
            rep.input_digest = digest_hex(text);
            rep.profile = p;
            rep.n = t.n;
            if (pwhich == "cut-dense") {
                PipelineResult pr = cut_dense_power_hamilton(t, p);
                rep.stages = pr.stages;
                rep.branch = "cut-dense";
                rep.outcome = pr.found ? "Found" : "StagedFailure";
                if (pr.found) {
                    rep.witness = pr.witness;
                    rep.witness_kind = "cycle";
                }
            } else if (pwhich == "main") {
                MainResult mr = main_power_hamilton(t, p.k, p);
                rep.stages = mr.pipeline.stages;
                rep.branch = mr.branch;
                if (mr.pipeline.found) {
                    rep.outcome = "Found";
                    rep.witness = mr.pipeline.witness;
                    rep.witness_kind = "cycle";
                } else if (mr.oracle_outcome) {
                    rep.outcome = search_status_name(mr.oracle_outcome->status);
                } else {
                    rep.outcome = "StagedFailure";
                }
            } else {
                std::cerr << "unknown pipeline: " << pwhich << "\n";
                return exit_usage;
            }
            return finish(popt, rep, t0);
        }

        if (cv->parsed()) {
            ParameterProfile p = make_profile(copt);
            std::string text = read_file(cgraph);
            BipartiteGraph g = bipartite_from_text(text);
            Report rep;
            rep.command = "construct-verify " + ckind;
            rep.input_digest = digest_hex(text);
            rep.profile = p;
            Tournament t;
            ConstructionCertificate cert;
            if (ckind == "krr-free") {
                std::tie(t, cert) = build_krr_free_tournament(g, p.k);
            } else if (ckind == "cube-free") {
                std::tie(t, cert) = build_cube_free_tournament(g, cd);
            } else {
                std::cerr << "unknown construction: " << ckind << "\n";
                return exit_usage;
            }
            rep.n = t.n;
            Verdict v = verify_construction(t, cert);
            for (const auto &c : v.checks)
                rep.stages.push_back({c.name, c.pass ? "ok" : "failed", c.detail, {}});
            StageRecord st{"certificate", "ok", "", {}};
            st.margins.emplace_back("semidegree", cert.semidegree);
            st.margins.emplace_back("t", cert.t_param);
            st.margins.emplace_back(
                ckind == "krr-free" ? "r" : "d",
                ckind == "krr-free" ? cert.r_param : cert.d_param);
            rep.stages.push_back(st);
            if (!csave.empty()) save_tournament(csave, t);
            rep.outcome = v.pass ? "VerifiedPass" : "VerifiedFail";
            return finish(copt, rep, t0);
        }

        if (bat->parsed()) {
            ParameterProfile p = make_profile(bopt);
            std::string csv = "seed,n,k,branch,outcome,wall_millis,margins\n";
            int worst = exit_found;
            for (int s = 0; s < bseeds; ++s) {
                uint64_t seed = bopt.seed + s;
                ParameterProfile ps = p;
                ps.rng_seed = seed;
                Tournament t;
                if (bgen == "random") t = random_tournament(bn, seed);
                else if (bgen == "rotational") t = rotational_tournament(bn);
                else if (bgen == "paley") t = paley_tournament(bn);
                else if (bgen == "two-cluster") {
                    TwoClusterSpec spec;
                    spec.half = bhalf;
                    spec.forward_edges = bforward;
                    t = two_cluster(spec, seed).t;
                } else {
                    std::cerr << "unknown generator: " << bgen << "\n";
                    return exit_usage;
                }
                Clock::time_point rt0 = Clock::now();
                std::string branch, outcome, margins;
                std::vector<StageRecord> stages;
                std::optional<VertexSeq> witness;
                if (btask == "oracle-cycle") {
                    SearchOutcome so =
                        search_power_hamilton(t, ps.k, SeqKind::cycle, make_budget(bopt));
                    branch = "oracle";
                    outcome = search_status_name(so.status);
                    witness = so.witness;
                } else if (btask == "pipeline-cut-dense") {
                    PipelineResult pr = cut_dense_power_hamilton(t, ps);
                    branch = "cut-dense";
                    outcome = pr.found ? "Found" : "StagedFailure";
                    stages = pr.stages;
                    if (pr.found) witness = pr.witness;
                } else if (btask == "pipeline-main") {
                    MainResult mr = main_power_hamilton(t, ps.k, ps);
                    branch = mr.branch;
                    stages = mr.pipeline.stages;
                    if (mr.pipeline.found) {
                        outcome = "Found";
                        witness = mr.pipeline.witness;
                    } else if (mr.oracle_outcome) {
                        outcome = search_status_name(mr.oracle_outcome->status);
                    } else {
                        outcome = "StagedFailure";
                    }
                } else {
                    std::cerr << "unknown task: " << btask << "\n";
                    return exit_usage;
                }
                int64_t ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                                                   rt0)
                                 .count();
                for (const auto &st : stages)
                    for (auto &[mk, mv] : st.margins)
                        margins += st.name + "." + mk + "=" + std::to_string(mv) + ";";
                csv += std::to_string(seed) + "," + std::to_string(t.n) + "," +
                       std::to_string(ps.k) + "," + branch + "," + outcome + "," +
                       std::to_string(ms) + "," + margins + "\n";
                worst = std::max(worst, exit_code_for(outcome));
                if (!bdir.empty()) {
                    Report rep;
                    rep.command = "batch " + btask;
                    rep.input_digest = digest_hex(tournament_to_text(t));
                    rep.profile = ps;
                    rep.n = t.n;
                    rep.outcome = outcome;
                    rep.branch = branch;
                    rep.stages = stages;
                    rep.seed = seed;
                    rep.wall_millis = ms;
                    if (witness) {
                        rep.witness = witness;
                        rep.witness_kind = "cycle";
                    }
                    write_file(bdir + "/run_" + std::to_string(seed) + ".json", rep.to_json());
                }
            }
            write_file(bcsv, csv);
            std::cerr << "wrote " << bcsv << "\n";
            return worst;
        }

        if (vr->parsed()) {
            Report rep = Report::from_json(read_file(vrep));
            std::string text = read_file(vin);
            if (digest_hex(text) != rep.input_digest) {
                std::cerr << "verify-report: input digest mismatch\n";
                return exit_staged;
            }
            if (!rep.witness) {
                std::cerr << "verify-report: no witness (outcome " << rep.outcome << ")\n";
                return rep.outcome == "ExhaustedNone" ? exit_refuted : exit_staged;
            }
            Tournament t = tournament_from_text(text);
            bool ok = verify_power_seq(t, *rep.witness, rep.profile.k,
                                       rep.witness_kind == "path" ? SeqKind::path
                                                                  : SeqKind::cycle);
            std::cerr << "verify-report: witness " << (ok ? "valid" : "INVALID") << "\n";
            return ok ? exit_found : exit_staged;
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_staged;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

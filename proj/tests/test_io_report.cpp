#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "error.hpp"
#include "extremal.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "report.hpp"

using namespace powham;

TEST_CASE("tournament text round trip") {
    Tournament cyc = build_tournament(3, {{0, 1}, {1, 2}, {2, 0}});
    std::string text = tournament_to_text(cyc);
    CHECK(text.substr(0, 13) == "tournament 3\n");
    Tournament back = tournament_from_text(text);
    CHECK(back.n == 3);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) CHECK(back.edge(u, v) == cyc.edge(u, v));
    CHECK(tournament_to_text(back) == text); // canonical writer

    for (uint64_t seed = 0; seed < 3; ++seed) {
        Tournament t = random_tournament(30, seed);
        CHECK(tournament_to_text(tournament_from_text(tournament_to_text(t))) ==
              tournament_to_text(t));
    }
}

TEST_CASE("reader enforces the builder error set") {
    CHECK_THROWS_AS(tournament_from_text("tournament 3\n0 1\n1 0\n1 2\n2 0\n"), Error);
    CHECK_THROWS_AS(tournament_from_text("tournament 2\n"), Error);    // missing pair
    CHECK_THROWS_AS(tournament_from_text("digraph 2\n0 1\n"), Error);  // bad header
    CHECK_THROWS_AS(tournament_from_text("tournament 2\n0 x\n"), Error);
    try {
        tournament_from_text("tournament 2\n0 1 junk\n");
        CHECK(false);
    } catch (const Error &e) {
        CHECK(e.code() == Errc::parse_error);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("bipartite text round trip") {
    BipartiteGraph heawood = incidence_graph_pg(2);
    std::string text = bipartite_to_text(heawood);
    BipartiteGraph back = bipartite_from_text(text);
    CHECK(back.na == 7);
    CHECK(back.nb == 7);
    for (int v = 0; v < 7; ++v) CHECK(back.degree_a(v) == 3);
    CHECK(bipartite_to_text(back) == text);
}

TEST_CASE("digest is stable and content sensitive") {
    std::string a = tournament_to_text(random_tournament(20, 1));
    std::string b = tournament_to_text(random_tournament(20, 2));
    CHECK(digest_hex(a) == digest_hex(a));
    CHECK(digest_hex(a) != digest_hex(b));
}

TEST_CASE("report JSON round trip") {
    Report r;
    r.command = "oracle";
    r.input_digest = "00112233aabbccdd";
    r.profile = ParameterProfile::desk(3, 0.25, 42);
    r.outcome = "Found";
    r.branch = "oracle";
    r.n = 9;
    r.wall_millis = 12;
    r.seed = 42;
    r.witness = VertexSeq{0, 1, 2, 3, 4, 5, 6, 7, 8};
    r.witness_kind = "cycle";
    StageRecord st{"search", "ok", "detail", {{"nodes", 128.0}}};
    r.stages.push_back(st);

    Report back = Report::from_json(r.to_json());
    CHECK(back.command == r.command);
    CHECK(back.input_digest == r.input_digest);
    CHECK(back.outcome == r.outcome);
    CHECK(back.profile.k == 3);
    CHECK(back.profile.rng_seed == 42);
    CHECK(back.witness == r.witness);
    CHECK(back.stages.size() == 1);
    CHECK(back.stages[0].margins[0].first == "nodes");
    // byte-identical re-serialization (determinism modulo wall_millis)
    CHECK(back.to_json() == r.to_json());
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for("Found") == 0);
    CHECK(exit_code_for("ExhaustedNone") == 2);
    CHECK(exit_code_for("StagedFailure") == 3);
    CHECK(exit_code_for("BudgetExceeded") == 4);
}

#include "doctest.h"
#include "layercraft/analyze.hpp"
#include "layercraft/dot.hpp"
#include "layercraft/search.hpp"
#include "layercraft/verify.hpp"

using namespace layercraft;

TEST_CASE("root expression parser") {
  CHECK(parse_root_expr("e1-e2", 2) == IntVec{1, -1});
  CHECK(parse_root_expr("2e3", 5) == IntVec{0, 0, 2, 0, 0});
  CHECK(parse_root_expr("e1-e5", 5) == IntVec{1, 0, 0, 0, -1});
  CHECK(parse_root_expr("e2+e3", 5) == IntVec{0, 1, 1, 0, 0});
  CHECK(parse_root_expr("e4", 5) == IntVec{0, 0, 0, 1, 0});

  try {
    parse_root_expr("e1*e2", 3);
    FAIL("expected a parse error");
  } catch (const error& e) {
    CHECK(e.code() == errc::parse_error);
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_root_expr("e9", 3), error);
  CHECK_THROWS_AS(parse_root_expr("e1-", 3), error);
  CHECK_THROWS_AS(parse_root_expr("x1", 3), error);
}

TEST_CASE("input spec validation") {
  auto spec = parse_input_text(R"({"arrangement": {"group": "torus", "dim": 2,
      "characters": [[1,0],[0,1]]}})");
  CHECK(std::holds_alternative<ArrangementSpec>(spec.payload));

  CHECK_THROWS_AS(parse_input_text(R"({"arrangement": {"group": "torus", "dim": 2,
      "characters": [[1,0]], "bogus": 1}})"),
                  error);  // unknown keys rejected
  CHECK_THROWS_AS(parse_input_text(R"({"nonsense": {}})"), error);
  CHECK_THROWS_AS(parse_input_text(R"({"poset": {"elements": ["a","a"], "covers": []}})"), error);
  CHECK_THROWS_AS(parse_input_text("not json"), error);
  CHECK_THROWS_AS(parse_input_text(R"({"root_ideal": {"type": "D", "rank": 4,
      "lattice": "root", "ideal": "full"}})"),
                  error);  // D/E/F/G unsupported

  auto rspec = parse_input_text(R"({"root_ideal": {"type": "C", "rank": 5, "lattice": "integer",
      "ideal": {"generators": ["e1-e5", "e2+e3"]}}})");
  RootIdeal ideal = resolve_ideal(std::get<RootIdealSpec>(rspec.payload));
  CHECK(ideal.roots.size() == 19);
}

TEST_CASE("analyze report: deterministic, schema-complete, round-trips") {
  auto spec = parse_input_text(R"({"root_ideal": {"type": "B", "rank": 2, "lattice": "integer",
      "ideal": "full"}})");
  Json a = run_analyze(spec);
  Json b = run_analyze(spec);
  CHECK(a.dump() == b.dump());  // byte-identical reruns
  CHECK(a.at("schema_version") == 1);
  CHECK(a.at("kind") == "root_ideal");
  CHECK(a.at("poset").at("elements") == 7);
  CHECK(a.at("char_poly") == Json::array({4, -4, 1}));
  CHECK(a.at("flags").at("inductive") == "true");
  CHECK(a.at("flags").at("supersolvable") == "true");
  CHECK(a.at("flags").at("strictly_supersolvable") == "false");
  CHECK(a.at("exponents") == Json::array({2, 2}));
  CHECK(a.at("predicted").at("match") == true);

  // the validated echo re-parses to the same input
  InputSpec again = parse_input_text(a.at("input").dump());
  CHECK(run_analyze(again).dump() == a.dump());

  // timing only appears when asked for
  CHECK(!a.contains("timing_ms"));
  AnalyzeOptions opt;
  opt.timing = true;
  CHECK(run_analyze(spec, opt).contains("timing_ms"));
}

TEST_CASE("analyze: poset input and matrix-S fixtures") {
  auto pw = run_analyze(parse_input_text(R"({"poset": {
      "elements": ["0","a1","a2","a3","a4","a5","a6","u","v","w"],
      "covers": [["0","a1"],["0","a2"],["0","a3"],["0","a4"],["0","a5"],["0","a6"],
                 ["a1","u"],["a2","u"],["a3","u"],["a4","w"],["a5","w"],["a6","w"],
                 ["a1","v"],["a2","v"],["a3","v"],["a4","v"],["a5","v"],["a6","v"]]}})"));
  CHECK(pw.at("flags").at("factorable") == "true");
  CHECK(pw.at("exponents") == Json::array({3, 3}));
  CHECK(pw.at("flags").at("divisional") == "false");
  CHECK(pw.at("flags").at("inductive") == "false");

  auto ms = run_analyze(parse_input_text(R"({"arrangement": {"group": "torus", "dim": 3,
      "characters": [[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,-1],[0,1,-1]],
      "labels": ["H1","H2","H3","H4","H5","H6"]}})"));
  CHECK(ms.at("poset").at("elements") == 18);
  CHECK(ms.at("flags").at("inductive") == "true");
  CHECK(ms.at("arrangement").at("exponents") == Json::array({2, 2, 2}));

  auto mr = run_analyze(parse_input_text(R"({"arrangement": {"group": "real", "dim": 3,
      "characters": [[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,-1],[0,1,-1]]}})"));
  CHECK(mr.at("flags").at("factorable") == "false");
  CHECK(mr.at("flags").at("divisional") == "false");
  CHECK(mr.at("arrangement").at("char_poly") == Json::array({-7, 12, -6, 1}));
}

TEST_CASE("hasse DOT output") {
  auto spec = parse_input_text(R"({"arrangement": {"group": "torus", "dim": 2,
      "characters": [[1,0],[0,1],[1,1],[1,-1]]}})");
  Poset p = poset_for_input(spec);
  std::string dot = hasse_dot(p);
  // 7 nodes, 10 cover edges
  size_t nodes = 0, edges = 0, at = 0;
  while ((at = dot.find("[label=", at)) != std::string::npos) {
    ++nodes;
    ++at;
  }
  at = 0;
  while ((at = dot.find(" -> ", at)) != std::string::npos) {
    ++edges;
    ++at;
  }
  CHECK(nodes == 7);
  CHECK(edges == 10);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(dot.find("(-1,-1)") != std::string::npos);

  Poset trivial = Poset::validate({"x"}, {});
  std::string tdot = hasse_dot(trivial);
  CHECK(tdot.find("n0") != std::string::npos);
  CHECK(tdot.find("->") == std::string::npos);

  // Pi_3^w: 10 nodes
  Poset pw = poset_for_input(parse_input_text(R"({"poset": {
      "elements": ["0","a1","a2","a3","a4","a5","a6","u","v","w"],
      "covers": [["0","a1"],["0","a2"],["0","a3"],["0","a4"],["0","a5"],["0","a6"],
                 ["a1","u"],["a2","u"],["a3","u"],["a4","w"],["a5","w"],["a6","w"],
                 ["a1","v"],["a2","v"],["a3","v"],["a4","v"],["a5","v"],["a6","v"]]}})"));
  CHECK(pw.size() == 10);
}

TEST_CASE("verify: quick run of every suite on a small corpus") {
  VerifyOptions opt;
  opt.count = 12;
  opt.suites = {"deletion-restriction", "sign-alternation", "inclusions", "tm-factor",
                "exponent-sum"};
  auto results = run_verify(opt);
  for (const auto& r : results) {
    INFO(r.name);
    for (const auto& d : r.failure_details) INFO(d);
    CHECK(r.failures == 0);
    CHECK(r.checked > 0);
  }

  // parallel schedule must not change the outcome counts
  opt.jobs = 4;
  auto par = run_verify(opt);
  REQUIRE(par.size() == results.size());
  for (size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].checked == results[i].checked);
    CHECK(par[i].failures == results[i].failures);
  }
}

TEST_CASE("search: tiny exhaustive run finds nothing") {
  SearchOptions opt;
  opt.max_atoms = 2;
  opt.dim_lo = 2;
  opt.dim_hi = 2;
  SearchLog log = run_search(opt);
  CHECK(log.examined > 5);
  CHECK(log.candidates.empty());
  bool pi3w_excluded = false, s_real_excluded = false;
  for (const auto& e : log.exclusions) {
    pi3w_excluded |= e.find("Pi_3^w: not divisional") != std::string::npos;
    s_real_excluded |= e.find("matrix-S real: lattice") != std::string::npos;
  }
  CHECK(pi3w_excluded);
  CHECK(s_real_excluded);
}

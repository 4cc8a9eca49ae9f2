#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "pudp/bundle.hpp"
#include "pudp/errors.hpp"

using namespace pudp;
using pudp::testing::fixture_path;

namespace {

void expect_schema_error(const std::string& text, const std::string& needle) {
  try {
    parse_bundle(Json::parse(text));
    FAIL("accepted: " << text);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_error);
    INFO(e.what());
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("schema violations carry pointer-style paths") {
  expect_schema_error(R"({})", "missing \"monad\"");
  expect_schema_error(R"({"monad": "identity", "bogus": 1})", "/bogus");
  expect_schema_error(R"({"monad": "maybe"})", "/monad");
  expect_schema_error(R"({"monad": "identity", "posets": {"X": {"chain": []}}})",
                      "/posets/X/chain");
  expect_schema_error(R"({"monad": "identity", "posets": {"X": {}}})", "/posets/X");
  expect_schema_error(
      R"({"monad": "identity", "posets": {"A": {"op": "B"}, "B": {"op": "A"}}})", "cyclic");
  expect_schema_error(R"({"monad": "identity", "dps": {"D": {"matrix": {"fun": "X",
                      "res": "X", "rows": []}}}})", "unknown poset");
  expect_schema_error(R"({"monad": "identity", "queries": {}})", "/queries");
  expect_schema_error(
      R"({"monad": "identity",
          "posets": {"B": {"chain": ["0", "1"]}},
          "dps": {"D": {"matrix": {"fun": "B", "res": "B",
                                   "rows": [[true, true], [false, true]]}}},
          "cells": {"D": {"param": [], "table": {"": "D"}}}})",
      "/cells/D");

  // Matrix contents still go through full validation.
  try {
    parse_bundle(Json::parse(
        R"({"monad": "identity",
            "posets": {"B": {"chain": ["0", "1"]}},
            "dps": {"D": {"matrix": {"fun": "B", "res": "B",
                                     "rows": [[false, false], [true, false]]}}}})"));
    FAIL("non-monotone matrix accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::monotonicity_violation);
  }
}

TEST_CASE("bundle files: missing and malformed") {
  CHECK_THROWS_AS(load_bundle("/nonexistent/bundle.json"), Error);

  std::string tmp = "/tmp/pudp_bad_bundle.json";
  {
    std::ofstream out(tmp);
    out << "this is not json";
  }
  try {
    load_bundle(tmp);
    FAIL("malformed json accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_error);
  }
  std::remove(tmp.c_str());
}

TEST_CASE("poset descriptors cover chain, grid, product, explicit, op") {
  auto b = parse_bundle(Json::parse(
      R"({"monad": "identity",
          "posets": {
            "C": {"chain": ["a", "b", "c"]},
            "G": {"grid": [{"name": "x", "values": [0, "1/2", 1]},
                            {"name": "y", "values": [0, 1], "ascending": false}]},
            "P": {"product": ["C", "C"]},
            "E": {"explicit": {"elements": ["u", "v", "w"],
                               "leq_pairs": [["u", "v"], ["v", "w"]]}},
            "O": {"op": "C"}
          }})"));
  CHECK(b.posets.at("C")->size() == 3);
  CHECK(b.posets.at("G")->size() == 6);
  CHECK(b.posets.at("G")->label(0) == Label{"0", "0"});
  // Descending axis orders downward.
  auto g = b.posets.at("G");
  CHECK(g->leq(*g->index_of({"0", "1"}), *g->index_of({"0", "0"})));
  CHECK(b.posets.at("P")->size() == 9);
  CHECK(b.posets.at("E")->leq(0, 2));
  CHECK(b.posets.at("O")->leq(2, 0));
  CHECK(poset_equal(*opposite(b.posets.at("O")), *b.posets.at("C")));
}

TEST_CASE("electric-vehicle bundle: composite fronts at named functionalities") {
  auto b = load_bundle(fixture_path("ev_point.json"));
  CHECK(b.kind == MonadKind::identity);
  CHECK(b.dps.size() == 4);

  auto out = run_requests(b, "query");
  const auto& results = out.at("results");
  REQUIRE(results.size() == 2);

  CHECK(results[0].at("f") == "(2,1)");
  const auto& a0 = results[0].at("answers");
  REQUIRE(a0.size() == 1);  // unit parameter space: one point
  CHECK(a0[0].at("point") == "");
  CHECK(a0[0].at("answer").at("antichain") == Json::parse(R"([["2","1"]])"));

  CHECK(results[1].at("f") == "(4,4)");
  CHECK(results[1].at("answers")[0].at("answer").at("antichain") ==
        Json::parse(R"([["4","2"]])"));

  auto dec = run_requests(b, "decide");
  const auto& d = dec.at("results")[0];
  CHECK(d.at("target") == "Chassis");
  CHECK(d.at("utility") == "worst_case");
  CHECK(d.at("feasible") == true);
  CHECK(d.at("value") == 8.0);
}

TEST_CASE("electric-vehicle bundle: summary of the evaluated diagram") {
  auto b = load_bundle(fixture_path("ev_point.json"));
  auto out = run_eval(b);
  CHECK(out.at("kind") == "identity");
  CHECK(out.at("src").at("elements") == 25);
  CHECK(out.at("tgt").at("elements") == 25);
  CHECK(out.at("tgt").at("factors") == Json::parse(R"(["cost","mass"])"));
  CHECK(out.at("parameters").at("points") == 1);
  CHECK(out.at("payload").at("kind") == "identity");
  // The canonical text drops the redundant parentheses of the fixture.
  CHECK(out.at("diagram") ==
        "loop[mfb](id(V) | Sum ; Chassis ; Battery ; id(Cc) | Dup)");

  auto render = render_eval(out);
  CHECK(render.find("src") != std::string::npos);
  CHECK(render.find("cost") != std::string::npos);
}

TEST_CASE("interval bundle answers bracket the point-estimate front") {
  auto b = load_bundle(fixture_path("ev_interval.json"));
  auto out = run_requests(b, "query");
  const auto& results = out.at("results");
  REQUIRE(results.size() == 2);

  const auto& answer = results[0].at("answers")[0].at("answer");
  CHECK(answer.at("best_case") == Json::parse(R"([["1","0"]])"));
  CHECK(answer.at("worst_case") == Json::parse(R"([["3","2"]])"));

  // At the extreme corner the pessimistic problem is infeasible outright.
  const auto& corner = results[1].at("answers")[0].at("answer");
  CHECK(corner.at("worst_case") == Json::array());
}

TEST_CASE("distribution bundle answers are normalized pushforwards") {
  auto b = load_bundle(fixture_path("ev_distribution.json"));
  auto out = run_requests(b, "query");
  const auto& atoms = out.at("results")[0].at("answers")[0].at("answer").at("atoms");
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0][0] == Json::parse(R"([["2","1"]])"));
  CHECK(atoms[0][1] == 0.75);
  CHECK(atoms[1][0] == Json::parse(R"([["3","2"]])"));
  CHECK(atoms[1][1] == 0.25);
  double mass = 0;
  for (const auto& a : atoms) mass += a[1].get<double>();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decision bundle reproduces the expected-versus-worst-case flip") {
  auto b = load_bundle(fixture_path("decide_flip.json"));
  auto out = run_requests(b, "decide");
  const auto& results = out.at("results");
  REQUIRE(results.size() == 2);
  CHECK(results[0].at("utility") == "expected");
  CHECK(results[0].at("point") == "0");
  CHECK(results[0].at("value") == 2.0);
  CHECK(results[1].at("utility") == "worst_case");
  CHECK(results[1].at("point") == "1");
  CHECK(results[1].at("value") == 2.5);
}

TEST_CASE("inference bundle computes the posterior") {
  auto b = load_bundle(fixture_path("infer_bayes.json"));
  auto out = run_requests(b, "infer");
  const auto& r = out.at("results")[0];
  CHECK(r.at("points") == Json::parse(R"(["d1","d2"])"));
  CHECK(r.at("posterior")[0] == 0.8);
  CHECK(r.at("posterior")[1] == 0.2);
}

TEST_CASE("fit bundle runs both modes") {
  auto b = load_bundle(fixture_path("fit_threshold.json"));
  auto out = run_requests(b, "fit");
  const auto& results = out.at("results");
  REQUIRE(results.size() == 2);
  for (const auto& r : results) {
    CHECK(r.at("theta") == Json::parse(R"(["2"])"));
    CHECK(r.at("loss") == "0");
  }
  CHECK(results[0].at("mode") == "least_squares");
  CHECK(results[1].at("mode") == "constrained");
}

TEST_CASE("unknown request kinds and bad targets are input errors") {
  auto b = parse_bundle(Json::parse(
      R"({"monad": "identity", "queries": [{"kind": "frobnicate"}]})"));
  CHECK_THROWS_AS(run_requests(b, "query"), Error);

  auto b2 = parse_bundle(Json::parse(
      R"({"monad": "identity", "queries": [{"kind": "query", "target": "Nope", "f": "x"}]})"));
  try {
    run_requests(b2, "query");
    FAIL("unknown target accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/queries/0/target") != std::string::npos);
  }

  // A query against a bundle with no diagram needs an explicit target.
  auto b3 = parse_bundle(Json::parse(
      R"({"monad": "identity", "queries": [{"kind": "query", "f": "x"}]})"));
  CHECK_THROWS_AS(run_requests(b3, "query"), Error);
  CHECK_THROWS_AS(run_eval(b3), Error);
}

TEST_CASE("law report JSON: pass/fail accounting and determinism") {
  LawOptions opt;
  opt.seed = 7;
  opt.samples = 30;
  auto out1 = run_check_laws(opt, nullptr);
  auto out2 = run_check_laws(opt, nullptr);
  CHECK(out1.at("all_pass") == true);
  CHECK(dump_json(out1) == dump_json(out2));

  LawOptions other = opt;
  other.seed = 8;
  auto out3 = run_check_laws(other, nullptr);
  CHECK(out3.at("all_pass") == true);

  LawOptions corrupt = opt;
  corrupt.corrupt_interval_join = true;
  auto bad = run_check_laws(corrupt, nullptr);
  CHECK(bad.at("all_pass") == false);

  auto render = render_check_laws(bad);
  CHECK(render.find("[FAIL]") != std::string::npos);
  CHECK(render.find("[PASS]") != std::string::npos);
}

TEST_CASE("law report over a bundle checks its named objects") {
  auto b = load_bundle(fixture_path("ev_point.json"));
  LawOptions opt;
  opt.seed = 7;
  opt.samples = 20;
  auto out = run_check_laws(opt, &b);
  CHECK(out.at("all_pass") == true);
  bool saw_bundle_dp = false;
  for (const auto& r : out.at("results"))
    if (r.at("name").get<std::string>().find("bundle dp \"Sum\"") != std::string::npos)
      saw_bundle_dp = true;
  CHECK(saw_bundle_dp);
}

TEST_CASE("output JSON is stable and round-trips") {
  auto b = load_bundle(fixture_path("ev_point.json"));
  auto out = run_requests(b, "query");
  auto text = dump_json(out);
  CHECK(text.back() == '\n');
  CHECK(Json::parse(text) == out);
  CHECK(dump_json(Json::parse(text)) == text);

  auto table = render_requests(out, "query");
  CHECK(table.find("(2,1)") != std::string::npos);

  CHECK(fmt_double(round12(0.1 + 0.2)) == "0.3");
  CHECK(fmt_double(2.0) == "2");
}

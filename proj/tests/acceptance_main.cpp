// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Expected values are recomputed here from first principles
// (exhaustive enumeration, direct arithmetic) rather than taken from the
// library under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "pudp/bundle.hpp"
#include "pudp/diagram.hpp"
#include "pudp/errors.hpp"
#include "pudp/lawcheck.hpp"
#include "pudp/query.hpp"

using namespace pudp;
using pudp::testing::fixture_path;
using pudp::testing::oracle_front;

namespace {

constexpr double kTol = 1e-9;  // distribution comparisons, pinned

struct Criterion {
  const char* title;
  double budget_seconds;  // 0: no explicit budget
  std::function<bool(std::string&)> run;
};

bool report_suite(const LawReport& rep, std::string& detail) {
  for (const auto& r : rep.results)
    if (!r.pass) {
      detail += "law failed: " + r.name;
      if (!r.witness.empty()) detail += " [" + r.witness + "]";
      detail += "; ";
      return false;
    }
  return true;
}

// --- criterion 1: category laws of feasibility relations ------------------

bool run_dp_laws(std::string& detail) {
  LawOptions opt;
  opt.seed = 1;
  opt.samples = 500;  // >= 500 random instances per sampled law, posets <= 5
  return report_suite(dp_law_suite(opt), detail);
}

// --- criterion 2: uncertainty monad laws -----------------------------------

bool run_monad_laws(std::string& detail) {
  LawOptions opt;
  opt.seed = 2;
  opt.samples = 200;
  opt.tol = kTol;
  bool ok = true;
  for (MonadKind kind : {MonadKind::identity, MonadKind::powerset, MonadKind::interval,
                         MonadKind::distribution})
    ok = report_suite(monad_law_suite(kind, opt), detail) && ok;
  return ok;
}

// --- criterion 3: parametrized-cell laws -----------------------------------

bool run_para_laws(std::string& detail) {
  LawOptions opt;
  opt.seed = 3;
  opt.samples = 400;  // suite draws samples/4 = 100 instances per law
  opt.tol = kTol;
  bool ok = true;
  for (MonadKind kind : {MonadKind::identity, MonadKind::powerset, MonadKind::interval,
                         MonadKind::distribution})
    ok = report_suite(para_law_suite(kind, opt), detail) && ok;
  return ok;
}

// --- criterion 4: query vs brute-force oracle ------------------------------

std::vector<Poset> all_posets_up_to_3() {
  return {
      mk_poset({"a"}, {}),
      chain({"a", "b"}),
      mk_poset({"a", "b"}, {}),
      chain({"a", "b", "c"}),
      mk_poset({"a", "b", "c"}, {}),
      mk_poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}),  // one bottom, two tops
      mk_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}),  // two bottoms, one top
      mk_poset({"a", "b", "c"}, {{"a", "b"}}),              // chain plus isolated point
  };
}

bool run_query_oracle(std::string& detail) {
  size_t checked = 0;
  auto catalog = all_posets_up_to_3();
  for (const auto& fun : catalog)
    for (const auto& res : catalog)
      for (const auto& dp : all_dps(fun, res))
        for (size_t f = 0; f < fun->size(); ++f) {
          ++checked;
          if (fix_fun_min_res(dp, f).members != oracle_front(dp, f)) {
            detail = "mismatch on exhaustive instance";
            return false;
          }
        }
  if (checked < 8000) {
    detail = "exhaustive sweep unexpectedly small: " + std::to_string(checked);
    return false;
  }

  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    auto fun = random_grid(rng, 3, 6);
    auto res = random_grid(rng, 3, 6);
    auto dp = random_dp(rng, fun, res);
    size_t f = rng.uniform(fun->size());
    if (fix_fun_min_res(dp, f).members != oracle_front(dp, f)) {
      detail = "mismatch on random grid instance " + std::to_string(i);
      return false;
    }
  }

  // Lifted queries equal per-member / per-atom recomputation.
  for (MonadKind kind : {MonadKind::identity, MonadKind::powerset, MonadKind::interval,
                         MonadKind::distribution}) {
    for (int i = 0; i < 50; ++i) {
      auto src = random_poset(rng, 3);
      auto tgt = random_poset(rng, 4);
      auto cell = random_cell(rng, kind, src, tgt);
      size_t f = rng.uniform(src->size());
      auto got = query_cell(cell, f);
      for (size_t p = 0; p < cell.dom.num_points(); ++p) {
        const auto& payload = cell.at(p);
        Uncertain<Antichain> expect;
        switch (kind) {
          case MonadKind::identity:
            expect = unit(kind, fix_fun_min_res(payload.items[0], f));
            break;
          case MonadKind::powerset: {
            std::vector<Antichain> fronts;
            for (const auto& d : payload.items) fronts.push_back(fix_fun_min_res(d, f));
            expect = make_powerset(std::move(fronts));
            break;
          }
          case MonadKind::interval:
            expect = Uncertain<Antichain>{kind,
                                          {fix_fun_min_res(payload.items[1], f),
                                           fix_fun_min_res(payload.items[0], f)},
                                          {}};
            break;
          case MonadKind::distribution: {
            std::vector<Antichain> fronts;
            for (const auto& d : payload.items) fronts.push_back(fix_fun_min_res(d, f));
            expect = make_distribution(std::move(fronts), payload.probs);
            break;
          }
        }
        if (!values_equal(got[p], expect, kTol)) {
          detail = std::string("lifted query mismatch, kind ") + kind_name(kind);
          return false;
        }
      }
    }
  }
  return true;
}

// --- criterion 5: electric-vehicle composite -------------------------------

struct EvGrids {
  std::vector<Rat> small{Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)};  // v,l,mfb,mhat,c,m
  std::vector<Rat> wide{Rat(0), Rat(2), Rat(4), Rat(6), Rat(8)};   // lhat,pw
};

using BatteryThresholds = std::function<std::pair<Rat, Rat>(const Rat&)>;

// Exhaustive truth about the composite: existential sweep over the internal
// wires, straight from the inequality chain of the fixture formulas.
bool ev_feasible(const EvGrids& g, const Rat& v, const Rat& l, const Rat& c, const Rat& m,
                 const BatteryThresholds& battery) {
  for (const Rat& mfb : g.small)
    for (const Rat& lhat : g.wide)
      for (const Rat& pw : g.wide)
        for (const Rat& mhat : g.small) {
          auto [bc, bm] = battery(pw);
          if (l + mfb <= lhat && v + lhat / 2 <= pw && bc <= c && bm <= mhat &&
              mhat <= m && mhat <= mfb)
            return true;
        }
  return false;
}

// Front over the 5x5 (cost, mass) grid as sorted flat indices.
std::vector<size_t> ev_oracle_front(const EvGrids& g, const Rat& v, const Rat& l,
                                    const BatteryThresholds& battery) {
  std::vector<std::pair<size_t, size_t>> feas;
  for (size_t ci = 0; ci < g.small.size(); ++ci)
    for (size_t mi = 0; mi < g.small.size(); ++mi)
      if (ev_feasible(g, v, l, g.small[ci], g.small[mi], battery)) feas.push_back({ci, mi});
  std::vector<size_t> out;
  for (auto [ci, mi] : feas) {
    bool minimal = true;
    for (auto [cj, mj] : feas)
      if ((cj != ci || mj != mi) && cj <= ci && mj <= mi) minimal = false;
    if (minimal) out.push_back(ci * g.small.size() + mi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const DesignProblem& single_dp(const ParamCell& cell, size_t slot = 0) {
  return cell.at(0).items[slot];
}

ParamCell eval_bundle_diagram(const std::string& file) {
  Bundle b = load_bundle(fixture_path(file));
  DiagramEnv env = diagram_env(b);
  return eval_diagram(*parse_diagram(b.diagram_text), env);
}

bool run_ev_case(std::string& detail) {
  EvGrids g;
  BatteryThresholds point = [](const Rat& pw) {
    return std::make_pair(pw / 2, pw / 4);
  };
  BatteryThresholds pessimistic = [](const Rat& pw) {
    return std::make_pair(pw / 2 + 1, pw / 4 + 1);
  };
  BatteryThresholds optimistic = [](const Rat& pw) {
    return std::make_pair(std::max(pw / 2 - 1, Rat(0)), std::max(pw / 4 - 1, Rat(0)));
  };

  auto point_cell = eval_bundle_diagram("ev_point.json");
  const auto& point_dp = single_dp(point_cell);
  if (point_dp.fun->size() != 25 || point_dp.res->size() != 25) {
    detail = "unexpected composite interface";
    return false;
  }
  for (size_t f = 0; f < 25; ++f) {
    Rat v = g.small[f / 5], l = g.small[f % 5];
    if (fix_fun_min_res(point_dp, f).members != ev_oracle_front(g, v, l, point)) {
      detail = "point-estimate front differs at f index " + std::to_string(f);
      return false;
    }
  }

  auto interval_cell = eval_bundle_diagram("ev_interval.json");
  const auto& lo_dp = single_dp(interval_cell, 0);
  const auto& hi_dp = single_dp(interval_cell, 1);
  for (size_t f = 0; f < 25; ++f) {
    Rat v = g.small[f / 5], l = g.small[f % 5];
    auto worst = fix_fun_min_res(lo_dp, f);
    auto best = fix_fun_min_res(hi_dp, f);
    auto mid = fix_fun_min_res(point_dp, f);
    if (worst.members != ev_oracle_front(g, v, l, pessimistic) ||
        best.members != ev_oracle_front(g, v, l, optimistic)) {
      detail = "interval front differs at f index " + std::to_string(f);
      return false;
    }
    // Bracketing in the domination order: optimistic <= point <= pessimistic.
    Antichain mid_on = {lo_dp.res, mid.members};
    if (!antichain_leq(best, mid_on) || !antichain_leq(mid_on, worst)) {
      detail = "interval fronts fail to bracket at f index " + std::to_string(f);
      return false;
    }
  }

  auto dist_cell = eval_bundle_diagram("ev_distribution.json");
  for (size_t f = 0; f < 25; ++f) {
    Rat v = g.small[f / 5], l = g.small[f % 5];
    auto got = query_uncertain(dist_cell.at(0), f);
    double mass = 0;
    for (double p : got.probs) mass += p;
    if (std::abs(mass - 1.0) > kTol) {
      detail = "front distribution not normalized at f index " + std::to_string(f);
      return false;
    }
    Antichain a0 = {dist_cell.tgt, ev_oracle_front(g, v, l, point)};
    Antichain a1 = {dist_cell.tgt, ev_oracle_front(g, v, l, pessimistic)};
    auto expect = make_distribution<Antichain>({a0, a1}, {0.75, 0.25});
    if (!values_equal(got, expect, kTol)) {
      detail = "front distribution differs at f index " + std::to_string(f);
      return false;
    }
  }
  return true;
}

// --- criterion 6: decision and inference -----------------------------------

bool run_decision_inference(std::string& detail) {
  auto res = grid_poset({{"c", {Rat(0), Rat(1), Rat(2), Rat(5, 2), Rat(3)}, true}});
  auto fun = grid_poset({{"v", {Rat(0)}, true}});
  auto at_cost = [&](const Rat& c) {
    return threshold_dp(fun, res, [c](const std::vector<Rat>&) {
      return std::vector<Rat>{c};
    });
  };
  auto cell = make_cell(
      MonadKind::distribution, ParamSpace({ParamFactor{"o", {"a", "b"}, nullptr}}), fun, res,
      {make_distribution<DesignProblem>({at_cost(Rat(1)), at_cost(Rat(3))}, {0.5, 0.5}),
       make_distribution<DesignProblem>({at_cost(Rat(5, 2))}, {1.0})});
  auto expected = decide(cell, 0, Utility::expected);
  auto worst = decide(cell, 0, Utility::worst_case);
  // Direct arithmetic: E[a] = 2 < 2.5 = E[b]; max[a] = 3 > 2.5 = max[b].
  if (expected.point != 0 || std::abs(expected.value - 2.0) > kTol) {
    detail = "expected-utility argmin wrong";
    return false;
  }
  if (worst.point != 1 || std::abs(worst.value - 2.5) > kTol) {
    detail = "worst-case argmin wrong";
    return false;
  }

  // Inference over a 3-point factor.
  auto g1 = grid_poset({{"x", {Rat(0)}, true}});
  auto yes = all_feasible(g1, g1);
  auto no = none_feasible(g1, g1);
  std::vector<double> like{0.9, 0.5, 0.1};
  std::vector<Uncertain<DesignProblem>> table;
  for (double p : like) table.push_back(make_distribution<DesignProblem>({yes, no}, {p, 1 - p}));
  auto dcell = make_cell(MonadKind::distribution,
                         ParamSpace({ParamFactor{"d", {"d1", "d2", "d3"}, nullptr}}), g1, g1,
                         std::move(table));
  std::vector<double> prior{0.2, 0.3, 0.5};
  Observation obs_yes{{}, 0, 0, true};
  Observation obs_no{{}, 0, 0, false};

  // Uniform likelihood leaves the prior unchanged.
  auto same_table = std::vector<Uncertain<DesignProblem>>(
      3, make_distribution<DesignProblem>({yes, no}, {0.6, 0.4}));
  auto flat = make_cell(MonadKind::distribution,
                        ParamSpace({ParamFactor{"d", {"d1", "d2", "d3"}, nullptr}}), g1, g1,
                        std::move(same_table));
  auto unchanged = bayes_update(flat, 0, prior, {obs_yes, obs_yes});
  for (size_t i = 0; i < 3; ++i)
    if (std::abs(unchanged[i] - prior[i]) > kTol) {
      detail = "uninformative update moved the prior";
      return false;
    }

  // Degenerate likelihood collapses to a point mass.
  std::vector<Uncertain<DesignProblem>> deg{
      make_distribution<DesignProblem>({yes}, {1.0}),
      make_distribution<DesignProblem>({no}, {1.0}),
      make_distribution<DesignProblem>({no}, {1.0})};
  auto dgcell = make_cell(MonadKind::distribution,
                          ParamSpace({ParamFactor{"d", {"d1", "d2", "d3"}, nullptr}}), g1, g1,
                          std::move(deg));
  auto collapsed = bayes_update(dgcell, 0, prior, {obs_yes});
  if (std::abs(collapsed[0] - 1.0) > kTol || std::abs(collapsed[1]) > kTol ||
      std::abs(collapsed[2]) > kTol) {
    detail = "degenerate update did not collapse";
    return false;
  }

  // Observation order cannot matter.
  auto p1 = bayes_update(dcell, 0, prior, {obs_yes, obs_no, obs_yes});
  auto p2 = bayes_update(dcell, 0, prior, {obs_no, obs_yes, obs_yes});
  for (size_t i = 0; i < 3; ++i)
    if (std::abs(p1[i] - p2[i]) > kTol) {
      detail = "posterior depends on observation order";
      return false;
    }
  return true;
}

// --- criterion 7: wiring-language round-trip and rejection ------------------

bool run_parser_roundtrip(std::string& detail) {
  auto env = pudp::testing::generator_env();
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto e = pudp::testing::random_well_typed_expr(rng, env);
    auto printed = print_diagram(*e);
    ExprPtr back;
    try {
      back = parse_diagram(printed);
    } catch (const Error& err) {
      detail = "printed text failed to parse: " + printed;
      return false;
    }
    if (!expr_equal(*back, *e) || print_diagram(*back) != printed) {
      detail = "round-trip mismatch: " + printed;
      return false;
    }
  }

  Bundle ev = load_bundle(fixture_path("ev_point.json"));
  DiagramEnv ev_env = diagram_env(ev);
  std::ifstream in(fixture_path("ill_typed_diagrams.json"));
  Json cases;
  in >> cases;
  for (const auto& c : cases.at("cases")) {
    std::string text = c.at("expr");
    std::string expect = c.at("expect");
    try {
      auto e = parse_diagram(text);
      typecheck_diagram(*e, ev_env);
      detail = "accepted ill-typed: \"" + text + "\"";
      return false;
    } catch (const Error& err) {
      bool kind_ok = (expect == "syntax" && err.code() == Errc::syntax_error) ||
                     (expect == "name" && err.code() == Errc::unknown_name) ||
                     (expect == "type" && err.code() == Errc::type_mismatch);
      if (!kind_ok) {
        detail = "wrong rejection for \"" + text + "\": " + err.what();
        return false;
      }
      if (!err.has_pos()) {
        detail = "rejection without source position for \"" + text + "\"";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"category laws of feasibility relations (exhaustive <=2, 500 random <=5)", 30,
       run_dp_laws},
      {"uncertainty monad laws, four kinds, 200 instances each, tol 1e-9", 30, run_monad_laws},
      {"parametrized-cell laws incl. interchange up to the tensorator, 100 per kind", 60,
       run_para_laws},
      {"minimal-resource query equals the brute-force oracle (exhaustive + 1000 random)", 0,
       run_query_oracle},
      {"electric-vehicle composite: fronts, interval bracketing, front distributions", 10,
       run_ev_case},
      {"decision argmin flip and Bayesian posterior checks", 0, run_decision_inference},
      {"wiring round-trip on 200 random expressions; ill-typed fixtures rejected", 0,
       run_parser_roundtrip},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto& c = criteria[i];
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
      ok = false;
      detail = "over time budget";
    }
    std::printf("[%s] criterion %zu: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1, c.title,
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}

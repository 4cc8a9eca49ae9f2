#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "pudp/errors.hpp"
#include "pudp/lawcheck.hpp"
#include "pudp/query.hpp"

using namespace pudp;
using pudp::testing::oracle_front;

namespace {

Poset cost_grid(std::vector<Rat> values) {
  return grid_poset({{"c", std::move(values), true}});
}

Poset point_grid() { return grid_poset({{"v", {Rat(0)}, true}}); }

// Constant-threshold problem: feasible at every resource >= c.
DesignProblem const_cost_dp(const Poset& res, const Rat& c) {
  return threshold_dp(point_grid(), res, [c](const std::vector<Rat>&) {
    return std::vector<Rat>{c};
  });
}

}  // namespace

TEST_CASE("minimal resources of a row: chain, corners, infeasible") {
  auto c3 = chain({"0", "1", "2"});
  auto front = fix_fun_min_res(identity_dp(c3), 1);
  CHECK(front.members == std::vector<size_t>{1});

  // feas(f, (r1, r2)) = [f <= max(r1, r2)] on Bool -> Bool^2.
  auto b = chain({"0", "1"});
  auto bb = product(b, b);
  std::vector<std::vector<bool>> rows{{true, true, true, true},
                                      {false, true, true, true}};
  auto max_dp = mk_dp(b, bb, rows);
  auto top_front = fix_fun_min_res(max_dp, 1);
  CHECK(top_front.members == std::vector<size_t>{*bb->index_of({"0", "1"}),
                                                 *bb->index_of({"1", "0"})});

  CHECK(fix_fun_min_res(none_feasible(b, bb), 1).members.empty());
  CHECK_THROWS_AS(fix_fun_min_res(identity_dp(c3), 9), Error);
}

TEST_CASE("minimal resources agree with the quadratic oracle, exhaustively and at random") {
  for (const auto& fun : poset_catalog_2())
    for (const auto& res : poset_catalog_2())
      for (const auto& dp : all_dps(fun, res))
        for (size_t f = 0; f < fun->size(); ++f)
          CHECK(fix_fun_min_res(dp, f).members == oracle_front(dp, f));

  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    auto fun = random_grid(rng, 2, 4);
    auto res = random_grid(rng, 2, 4);
    auto dp = random_dp(rng, fun, res);
    size_t f = rng.uniform(fun->size());
    CHECK(fix_fun_min_res(dp, f).members == oracle_front(dp, f));
  }
}

TEST_CASE("fronts shrink as problems become more feasible") {
  Rng rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    auto fun = random_poset(rng, 4);
    auto res = random_poset(rng, 4);
    auto a = random_dp(rng, fun, res);
    auto b = join_dp(a, random_dp(rng, fun, res));  // a <= b
    for (size_t f = 0; f < fun->size(); ++f) {
      // The more feasible problem's front sits at or below the other's.
      CHECK(antichain_leq(fix_fun_min_res(b, f), fix_fun_min_res(a, f)));
    }
  }
}

TEST_CASE("uncertain queries per kind") {
  auto b = chain({"0", "1"});
  auto top = all_feasible(b, b);
  auto bot = none_feasible(b, b);
  auto leq = [](const DesignProblem& x, const DesignProblem& y) { return leq_dp(x, y); };

  auto single = query_uncertain(unit(MonadKind::identity, identity_dp(b)), 1);
  CHECK(single.items[0].members == std::vector<size_t>{1});

  auto set = query_uncertain(make_powerset<DesignProblem>({top, bot}), 1);
  REQUIRE(set.items.size() == 2);
  // One member answers with the bottom element, the other with nothing.
  bool saw_bottom = false, saw_empty = false;
  for (const auto& a : set.items) {
    if (a.members == std::vector<size_t>{0}) saw_bottom = true;
    if (a.members.empty()) saw_empty = true;
  }
  CHECK(saw_bottom);
  CHECK(saw_empty);

  // Interval: optimistic answer first, pessimistic second, ordered by
  // antichain domination.
  auto iv = query_uncertain(make_interval(bot, top, leq), 1);
  CHECK(iv.kind == MonadKind::interval);
  CHECK(iv.items[0].members == std::vector<size_t>{0});  // from the hi problem
  CHECK(iv.items[1].members.empty());                    // from the lo problem
  CHECK(antichain_leq(iv.items[0], iv.items[1]));

  // Distribution: pushforward merges equal answers into one atom.
  auto d = query_uncertain(make_distribution<DesignProblem>(
                               {identity_dp(b), join_dp(identity_dp(b), bot)}, {0.5, 0.5}),
                           1);
  CHECK(d.items.size() == 1);
  CHECK(d.probs == std::vector<double>{1.0});

  auto d2 = query_uncertain(make_distribution<DesignProblem>({top, bot}, {0.25, 0.75}), 1);
  REQUIRE(d2.items.size() == 2);
  CHECK(d2.probs[0] + d2.probs[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("query of an included dp is the plain query under eta") {
  Rng rng(53);
  for (MonadKind kind : {MonadKind::identity, MonadKind::powerset, MonadKind::interval,
                         MonadKind::distribution}) {
    auto fun = random_poset(rng, 3);
    auto res = random_poset(rng, 3);
    auto dp = random_dp(rng, fun, res);
    size_t f = rng.uniform(fun->size());
    auto per_point = query_cell(include(kind, dp), f);
    REQUIRE(per_point.size() == 1);
    CHECK(values_equal(per_point[0], unit(kind, fix_fun_min_res(dp, f))));
  }
}

TEST_CASE("query_cell answers per parameter point in flat order") {
  auto b = chain({"0", "1"});
  auto cell = make_cell(
      MonadKind::identity,
      ParamSpace({ParamFactor{"o", {"x", "y"}, nullptr}}), b, b,
      {unit(MonadKind::identity, all_feasible(b, b)),
       unit(MonadKind::identity, none_feasible(b, b))});
  auto results = query_cell(cell, 1);
  REQUIRE(results.size() == 2);
  CHECK(results[0].items[0].members == std::vector<size_t>{0});
  CHECK(results[1].items[0].members.empty());
}

TEST_CASE("minimal cost along a chain") {
  auto c3 = cost_grid({Rat(0), Rat(1), Rat(2)});
  auto ident = threshold_dp(c3, c3, [](const std::vector<Rat>& v) { return v; });
  CHECK(min_cost(ident, 2) == Rat(2));

  CHECK_FALSE(min_cost(none_feasible(c3, c3), 0).has_value());

  auto f3 = grid_poset({{"v", {Rat(0), Rat(1), Rat(2)}, true}});
  auto r5 = cost_grid({Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)});
  auto twice = threshold_dp(f3, r5, [](const std::vector<Rat>& v) {
    return std::vector<Rat>{Rat(2) * v[0]};
  });
  CHECK(min_cost(twice, 2) == Rat(4));

  // The resource side must be a single ascending axis.
  auto b = chain({"0", "1"});
  try {
    min_cost(all_feasible(b, product(b, b)), 0);
    FAIL("non-chain resource accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_a_chain);
  }
}

TEST_CASE("decide: argmin scan with deterministic tie-breaking") {
  auto res = cost_grid({Rat(0), Rat(1), Rat(2), Rat(3)});
  auto mk_id_cell = [&](std::vector<Rat> costs) {
    std::vector<Uncertain<DesignProblem>> table;
    std::vector<std::string> points;
    for (size_t i = 0; i < costs.size(); ++i) {
      points.push_back("p" + std::to_string(i));
      table.push_back(unit(MonadKind::identity, const_cost_dp(res, costs[i])));
    }
    return make_cell(MonadKind::identity, ParamSpace({ParamFactor{"o", points, nullptr}}),
                     point_grid(), res, table);
  };

  auto single = decide(mk_id_cell({Rat(3)}), 0, Utility::worst_case);
  CHECK(single.point == 0);
  CHECK(single.feasible);
  CHECK(single.value == doctest::Approx(3.0));

  auto two = decide(mk_id_cell({Rat(3), Rat(2)}), 0, Utility::worst_case);
  CHECK(two.point == 1);
  CHECK(two.value == doctest::Approx(2.0));
  CHECK(two.scores == std::vector<double>{3.0, 2.0});

  // Ties break toward the first point.
  auto tie = decide(mk_id_cell({Rat(2), Rat(2)}), 0, Utility::best_case);
  CHECK(tie.point == 0);

  // Relabeling the points relabels the argmin.
  auto fwd = decide(mk_id_cell({Rat(1), Rat(3), Rat(2)}), 0, Utility::worst_case);
  auto rev = decide(mk_id_cell({Rat(2), Rat(3), Rat(1)}), 0, Utility::worst_case);
  CHECK(fwd.point == 0);
  CHECK(rev.point == 2);
  CHECK(fwd.value == rev.value);

  // All-infeasible cells report infeasibility instead of erroring.
  auto none = make_cell(MonadKind::identity, ParamSpace({ParamFactor{"o", {"p"}, nullptr}}),
                        point_grid(), res,
                        {unit(MonadKind::identity, none_feasible(point_grid(), res))});
  auto lost = decide(none, 0, Utility::worst_case);
  CHECK_FALSE(lost.feasible);
  CHECK(std::isinf(lost.value));
}

TEST_CASE("decide: expected versus worst case can disagree") {
  auto res = cost_grid({Rat(0), Rat(1), Rat(2), Rat(5, 2), Rat(3)});
  auto dist = [&](std::vector<Rat> costs, std::vector<double> probs) {
    std::vector<DesignProblem> dps;
    for (const auto& c : costs) dps.push_back(const_cost_dp(res, c));
    return make_distribution<DesignProblem>(std::move(dps), std::move(probs));
  };
  auto cell = make_cell(MonadKind::distribution,
                        ParamSpace({ParamFactor{"o", {"a", "b"}, nullptr}}), point_grid(), res,
                        {dist({Rat(1), Rat(3)}, {0.5, 0.5}), dist({Rat(5, 2)}, {1.0})});

  auto exp = decide(cell, 0, Utility::expected);
  CHECK(exp.point == 0);  // 0.5*1 + 0.5*3 = 2 beats 2.5
  CHECK(exp.value == doctest::Approx(2.0).epsilon(1e-12));

  auto worst = decide(cell, 0, Utility::worst_case);
  CHECK(worst.point == 1);  // max(1,3) = 3 loses to 2.5
  CHECK(worst.value == doctest::Approx(2.5).epsilon(1e-12));

  auto best = decide(cell, 0, Utility::best_case);
  CHECK(best.point == 0);  // min(1,3) = 1
  CHECK(best.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decide: interval scoring uses the pessimistic problem for worst case") {
  auto res = cost_grid({Rat(0), Rat(1), Rat(2), Rat(3)});
  auto leq = [](const DesignProblem& x, const DesignProblem& y) { return leq_dp(x, y); };
  // Optimistic bound costs 1, pessimistic costs 3 (more feasible = cheaper).
  auto iv = make_interval(const_cost_dp(res, Rat(3)), const_cost_dp(res, Rat(1)), leq);
  auto cell = make_cell(MonadKind::interval,
                        ParamSpace({ParamFactor{"o", {"p"}, nullptr}}), point_grid(), res, {iv});
  CHECK(decide(cell, 0, Utility::worst_case).value == doctest::Approx(3.0));
  CHECK(decide(cell, 0, Utility::best_case).value == doctest::Approx(1.0));

  // Expected utility needs distribution (or degenerate identity) payloads.
  try {
    decide(cell, 0, Utility::expected);
    FAIL("expected utility on intervals accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::incompatible_utility);
  }
}

TEST_CASE("utility names round-trip") {
  CHECK(utility_from_name("expected") == Utility::expected);
  CHECK(utility_from_name("worst_case") == Utility::worst_case);
  CHECK(utility_from_name("best_case") == Utility::best_case);
  CHECK_FALSE(utility_from_name("median").has_value());
  CHECK(std::string(utility_name(Utility::expected)) == "expected");
}

namespace {

// Distribution cell over one designated factor D whose payloads make the
// probed pair feasible with the given per-point probability.
ParamCell likelihood_cell(std::vector<double> feas_prob) {
  auto g = point_grid();
  auto yes = all_feasible(g, g);
  auto no = none_feasible(g, g);
  std::vector<Uncertain<DesignProblem>> table;
  std::vector<std::string> points;
  for (size_t i = 0; i < feas_prob.size(); ++i) {
    points.push_back("d" + std::to_string(i + 1));
    double p = feas_prob[i];
    if (p == 0.0)
      table.push_back(make_distribution<DesignProblem>({no}, {1.0}));
    else if (p == 1.0)
      table.push_back(make_distribution<DesignProblem>({yes}, {1.0}));
    else
      table.push_back(make_distribution<DesignProblem>({yes, no}, {p, 1.0 - p}));
  }
  return make_cell(MonadKind::distribution, ParamSpace({ParamFactor{"d", points, nullptr}}),
                   g, g, table);
}

}  // namespace

TEST_CASE("posterior updates follow Bayes' rule") {
  Observation feasible_obs{{}, 0, 0, true};

  // Likelihoods 0.8 vs 0.2 under a uniform prior.
  auto post = bayes_update(likelihood_cell({0.8, 0.2}), 0, {0.5, 0.5}, {feasible_obs});
  REQUIRE(post.size() == 2);
  CHECK(post[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(post[1] == doctest::Approx(0.2).epsilon(1e-12));

  // Degenerate likelihood collapses to a point mass.
  auto point = bayes_update(likelihood_cell({1.0, 0.0}), 0, {0.5, 0.5}, {feasible_obs});
  CHECK(point == std::vector<double>{1.0, 0.0});

  // Uninformative likelihood leaves the prior unchanged.
  auto same = bayes_update(likelihood_cell({0.7, 0.7}), 0, {0.3, 0.7}, {feasible_obs});
  CHECK(same[0] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(same[1] == doctest::Approx(0.7).epsilon(1e-9));

  // Negative observations flip the likelihood.
  Observation infeasible_obs{{}, 0, 0, false};
  auto neg = bayes_update(likelihood_cell({0.8, 0.2}), 0, {0.5, 0.5}, {infeasible_obs});
  CHECK(neg[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(neg[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("posterior is order-invariant and normalized on a 3-point factor") {
  auto cell = likelihood_cell({0.9, 0.5, 0.1});
  Observation yes{{}, 0, 0, true};
  Observation no{{}, 0, 0, false};
  std::vector<Observation> obs{yes, no, yes, yes, no};

  auto p1 = bayes_update(cell, 0, {0.2, 0.3, 0.5}, obs);
  std::vector<Observation> shuffled{no, yes, yes, no, yes};
  auto p2 = bayes_update(cell, 0, {0.2, 0.3, 0.5}, shuffled);
  REQUIRE(p1.size() == 3);
  double mass = 0;
  for (size_t i = 0; i < 3; ++i) {
    CHECK(p1[i] == doctest::Approx(p2[i]).epsilon(1e-9));
    mass += p1[i];
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  // Oracle: unnormalized product of per-observation likelihoods.
  std::vector<double> like{0.9, 0.5, 0.1};
  std::vector<double> expect(3);
  double total = 0;
  for (size_t d = 0; d < 3; ++d) {
    double w = std::vector<double>{0.2, 0.3, 0.5}[d];
    for (const auto& o : obs) w *= o.feasible ? like[d] : 1.0 - like[d];
    expect[d] = w;
    total += w;
  }
  for (size_t d = 0; d < 3; ++d) CHECK(p1[d] == doctest::Approx(expect[d] / total).epsilon(1e-9));
}

TEST_CASE("posterior failure modes") {
  Observation yes{{}, 0, 0, true};
  try {
    bayes_update(likelihood_cell({0.0, 0.0}), 0, {0.5, 0.5}, {yes});
    FAIL("zero evidence accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_evidence);
  }

  // Only distribution-kind cells carry likelihoods.
  auto g = point_grid();
  auto ident_cell = make_cell(MonadKind::identity,
                              ParamSpace({ParamFactor{"d", {"d1"}, nullptr}}), g, g,
                              {unit(MonadKind::identity, all_feasible(g, g))});
  CHECK_THROWS_AS(bayes_update(ident_cell, 0, {1.0}, {yes}), Error);
}

TEST_CASE("posterior conditions on the coordinates of the other factors") {
  auto g = point_grid();
  auto yes = make_distribution<DesignProblem>({all_feasible(g, g)}, {1.0});
  auto no = make_distribution<DesignProblem>({none_feasible(g, g)}, {1.0});
  // Factors (x, d); flat order: (x0,d0), (x0,d1), (x1,d0), (x1,d1).
  // Under x0, d0 fits the data; under x1, d1 does.
  auto cell = make_cell(MonadKind::distribution,
                        ParamSpace({ParamFactor{"x", {"x0", "x1"}, nullptr},
                                    ParamFactor{"d", {"d0", "d1"}, nullptr}}),
                        g, g, {yes, no, no, yes});
  auto at_x0 = bayes_update(cell, 1, {0.5, 0.5}, {Observation{{0}, 0, 0, true}});
  CHECK(at_x0 == std::vector<double>{1.0, 0.0});
  auto at_x1 = bayes_update(cell, 1, {0.5, 0.5}, {Observation{{1}, 0, 0, true}});
  CHECK(at_x1 == std::vector<double>{0.0, 1.0});
}

TEST_CASE("threshold fitting: least squares and constrained") {
  ThresholdFamily family = [](const std::vector<Rat>& fun, const std::vector<Rat>& theta) {
    return std::vector<Rat>{theta[0] * fun[0]};
  };
  std::vector<std::vector<Rat>> candidates{{Rat(1)}, {Rat(2)}, {Rat(3)}};
  std::vector<std::vector<Rat>> funs{{Rat(1)}};
  std::vector<std::vector<Rat>> ress{{Rat(2)}};

  auto ls = fit_threshold(family, candidates, funs, ress, FitMode::least_squares);
  CHECK(ls.theta == 1);
  CHECK(ls.loss == Rat(0));

  auto con = fit_threshold(family, candidates, funs, ress, FitMode::constrained);
  CHECK(con.theta == 1);  // feasible set {1, 2}; 2 has the smaller loss
  CHECK(con.loss == Rat(0));

  // Exact rational losses and earliest-candidate tie-breaking.
  std::vector<std::vector<Rat>> half{{Rat(3, 2)}};
  auto tie = fit_threshold(family, candidates, funs, half, FitMode::least_squares);
  CHECK(tie.theta == 0);
  CHECK(tie.loss == Rat(1, 4));

  // Realizable data recovers the generator exactly.
  std::vector<std::vector<Rat>> many_f{{Rat(0)}, {Rat(1)}, {Rat(2)}};
  std::vector<std::vector<Rat>> many_r{{Rat(0)}, {Rat(3)}, {Rat(6)}};
  auto exact = fit_threshold(family, candidates, many_f, many_r, FitMode::least_squares);
  CHECK(exact.theta == 2);
  CHECK(exact.loss == Rat(0));

  // No candidate satisfies every constraint.
  std::vector<std::vector<Rat>> low{{Rat(1, 2)}};
  try {
    fit_threshold(family, candidates, funs, low, FitMode::constrained);
    FAIL("infeasible constrained fit accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_feasible_set);
  }
}

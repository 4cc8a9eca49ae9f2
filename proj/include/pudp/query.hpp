#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pudp/para.hpp"

namespace pudp {

// Minimal resources that make functionality f feasible (the Pareto front of
// one row).  Empty antichain: f is infeasible outright.
Antichain fix_fun_min_res(const DesignProblem& dp, size_t f);

// Push the query through the uncertainty.  Interval payloads answer with an
// antichain interval in the domination order: the front of the optimistic
// problem bounds below, the front of the pessimistic one bounds above.
Uncertain<Antichain> query_uncertain(const Uncertain<DesignProblem>& m, size_t f);

// One answer per parameter point, in flat point order.
std::vector<Uncertain<Antichain>> query_cell(const ParamCell& cell, size_t f);

// Least resource coordinate making f feasible; requires the resource side to
// be a single ascending sample chain.  nullopt: infeasible at every level.
std::optional<Rat> min_cost(const DesignProblem& dp, size_t f);

enum class Utility { expected, worst_case, best_case };

const char* utility_name(Utility u);
std::optional<Utility> utility_from_name(const std::string& s);

struct Decision {
  size_t point;       // flat index into the cell's parameter space
  bool feasible;      // false: every choice scored +infinity
  double value;       // score of the chosen point (+inf when infeasible)
  std::vector<double> scores;  // one per point, +inf where infeasible
};

// Pick the parameter point whose uncertain min-cost scores best under the
// utility; ties break toward the lexicographically first point.
//   expected    needs distribution payloads (identity is degenerate);
//   worst_case  scores the pessimistic member, best_case the optimistic one.
Decision decide(const ParamCell& cell, size_t f, Utility utility);

// One feasibility observation: a parameter point identified by its
// coordinates on every factor except the queried one, plus the probed
// functionality/resource pair and the observed answer.
struct Observation {
  std::vector<uint32_t> rest;  // coords of the non-queried factors, in order
  size_t fun, res;
  bool feasible;
};

// Posterior over the points of one factor of a distribution-kind cell:
// prior times the product of per-observation likelihoods, renormalized.
// Throws zero_evidence when every point is ruled out.
std::vector<double> bayes_update(const ParamCell& cell, size_t factor,
                                 const std::vector<double>& prior,
                                 const std::vector<Observation>& observations);

enum class FitMode { least_squares, constrained };

// A threshold family: maps a functionality coordinate vector and a parameter
// vector to the per-factor resource thresholds.
using ThresholdFamily =
    std::function<std::vector<Rat>(const std::vector<Rat>& fun, const std::vector<Rat>& theta)>;

struct FitResult {
  size_t theta;  // index into the candidate grid
  Rat loss;      // squared loss of the winner
};

// Squared loss against (fun, res) samples, exact rational arithmetic.
//   least_squares: global argmin over the candidate grid;
//   constrained:   argmin among candidates whose thresholds never exceed the
//                  observed resources (throws empty_feasible_set otherwise).
// Ties break toward the earliest candidate.
FitResult fit_threshold(const ThresholdFamily& family,
                        const std::vector<std::vector<Rat>>& candidates,
                        const std::vector<std::vector<Rat>>& funs,
                        const std::vector<std::vector<Rat>>& ress, FitMode mode);

}  // namespace pudp

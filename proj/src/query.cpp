#include "pudp/query.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pudp {

Antichain fix_fun_min_res(const DesignProblem& dp, size_t f) {
  if (f >= dp.fun->size())
    throw Error(Errc::invalid_value, "functionality index out of range");
  return minimal_elements(dp.res, dp.rows[f]);
}

Uncertain<Antichain> query_uncertain(const Uncertain<DesignProblem>& m, size_t f) {
  if (m.kind == MonadKind::interval) {
    // A more feasible problem has a dominating-below front, so the interval
    // flips: the optimistic endpoint answers the lower antichain.
    return {m.kind, {fix_fun_min_res(m.items[1], f), fix_fun_min_res(m.items[0], f)}, {}};
  }
  return map_uncertain(m, [&](const DesignProblem& dp) { return fix_fun_min_res(dp, f); });
}

std::vector<Uncertain<Antichain>> query_cell(const ParamCell& cell, size_t f) {
  std::vector<Uncertain<Antichain>> out;
  out.reserve(cell.dom.num_points());
  for (size_t p = 0; p < cell.dom.num_points(); ++p)
    out.push_back(query_uncertain(cell.at(p), f));
  return out;
}

std::optional<Rat> min_cost(const DesignProblem& dp, size_t f) {
  if (f >= dp.fun->size())
    throw Error(Errc::invalid_value, "functionality index out of range");
  auto coords = ascending_chain_coords(*dp.res);
  if (!coords)
    throw Error(Errc::not_a_chain, "resource side is not an ascending sample chain");
  for (size_t r = 0; r < coords->size(); ++r)
    if (dp.feas(f, r)) return (*coords)[r];
  return std::nullopt;
}

const char* utility_name(Utility u) {
  switch (u) {
    case Utility::expected: return "expected";
    case Utility::worst_case: return "worst_case";
    case Utility::best_case: return "best_case";
  }
  return "?";
}

std::optional<Utility> utility_from_name(const std::string& s) {
  if (s == "expected") return Utility::expected;
  if (s == "worst_case") return Utility::worst_case;
  if (s == "best_case") return Utility::best_case;
  return std::nullopt;
}

Decision decide(const ParamCell& cell, size_t f, Utility utility) {
  if (f >= cell.src->size())
    throw Error(Errc::invalid_value, "functionality index out of range");
  if (utility == Utility::expected && cell.kind != MonadKind::distribution &&
      cell.kind != MonadKind::identity)
    throw Error(Errc::incompatible_utility,
                std::string("expected value is undefined for ") + kind_name(cell.kind) +
                    " payloads");

  auto coords = ascending_chain_coords(*cell.tgt);
  if (!coords)
    throw Error(Errc::not_a_chain, "resource side is not an ascending sample chain");
  const double inf = std::numeric_limits<double>::infinity();
  auto cost = [&](const DesignProblem& dp) -> double {
    for (size_t r = 0; r < coords->size(); ++r)
      if (dp.feas(f, r)) return rat_to_double((*coords)[r]);
    return inf;
  };

  Decision d;
  d.scores.reserve(cell.dom.num_points());
  for (size_t p = 0; p < cell.dom.num_points(); ++p) {
    const auto& m = cell.at(p);
    double score = 0.0;
    switch (cell.kind) {
      case MonadKind::identity: score = cost(m.items[0]); break;
      case MonadKind::interval:
        // items[0] is the pessimistic problem, items[1] the optimistic one.
        score = cost(utility == Utility::best_case ? m.items[1] : m.items[0]);
        break;
      case MonadKind::powerset: {
        score = utility == Utility::best_case ? inf : -inf;
        for (const auto& dp : m.items) {
          double c = cost(dp);
          score = utility == Utility::best_case ? std::min(score, c) : std::max(score, c);
        }
        break;
      }
      case MonadKind::distribution: {
        if (utility == Utility::expected) {
          score = 0.0;
          for (size_t i = 0; i < m.items.size(); ++i) score += m.probs[i] * cost(m.items[i]);
        } else {
          score = utility == Utility::best_case ? inf : -inf;
          for (const auto& dp : m.items) {
            double c = cost(dp);
            score = utility == Utility::best_case ? std::min(score, c) : std::max(score, c);
          }
        }
        break;
      }
    }
    d.scores.push_back(score);
  }

  d.point = 0;
  for (size_t p = 1; p < d.scores.size(); ++p)
    if (d.scores[p] < d.scores[d.point]) d.point = p;
  d.value = d.scores[d.point];
  d.feasible = std::isfinite(d.value);
  return d;
}

std::vector<double> bayes_update(const ParamCell& cell, size_t factor,
                                 const std::vector<double>& prior,
                                 const std::vector<Observation>& observations) {
  if (cell.kind != MonadKind::distribution)
    throw Error(Errc::kind_mismatch, "posterior updates need distribution payloads");
  if (factor >= cell.dom.num_factors())
    throw Error(Errc::invalid_value, "no such parameter factor");
  size_t npts = cell.dom.factor(factor).points.size();
  if (prior.size() != npts)
    throw Error(Errc::invalid_distribution, "prior length does not match the factor");
  double mass = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0)) throw Error(Errc::invalid_distribution, "negative prior probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > kTvTol)
    throw Error(Errc::invalid_distribution, "prior mass differs from 1 beyond tolerance");

  std::vector<double> post(prior);
  for (const auto& obs : observations) {
    if (obs.rest.size() + 1 != cell.dom.num_factors())
      throw Error(Errc::shape_mismatch, "observation must fix every other factor");
    if (obs.fun >= cell.src->size() || obs.res >= cell.tgt->size())
      throw Error(Errc::invalid_value, "observation probes outside the interfaces");
    for (size_t d = 0; d < npts; ++d) {
      std::vector<uint32_t> coords;
      coords.reserve(cell.dom.num_factors());
      size_t j = 0;
      for (size_t i = 0; i < cell.dom.num_factors(); ++i)
        coords.push_back(i == factor ? static_cast<uint32_t>(d) : obs.rest[j++]);
      const auto& m = cell.at(cell.dom.flat(coords));
      double p_feas = 0.0;
      for (size_t i = 0; i < m.items.size(); ++i)
        if (m.items[i].feas(obs.fun, obs.res)) p_feas += m.probs[i];
      double like = obs.feasible ? p_feas : 1.0 - p_feas;
      post[d] *= std::clamp(like, 0.0, 1.0);
    }
  }

  double total = 0.0;
  for (double p : post) total += p;
  if (total <= 0.0)
    throw Error(Errc::zero_evidence, "observations rule out every candidate");
  for (double& p : post) p /= total;
  return post;
}

FitResult fit_threshold(const ThresholdFamily& family,
                        const std::vector<std::vector<Rat>>& candidates,
                        const std::vector<std::vector<Rat>>& funs,
                        const std::vector<std::vector<Rat>>& ress, FitMode mode) {
  if (candidates.empty()) throw Error(Errc::invalid_value, "no candidate parameters");
  if (funs.size() != ress.size())
    throw Error(Errc::shape_mismatch, "sample functionalities and resources must align");

  std::optional<size_t> best;
  Rat best_loss;
  for (size_t t = 0; t < candidates.size(); ++t) {
    Rat loss(0);
    bool feasible = true;
    for (size_t i = 0; i < funs.size(); ++i) {
      std::vector<Rat> phi = family(funs[i], candidates[t]);
      if (phi.size() != ress[i].size())
        throw Error(Errc::shape_mismatch, "family output does not match the resource arity");
      for (size_t j = 0; j < phi.size(); ++j) {
        Rat d = phi[j] - ress[i][j];
        loss += d * d;
        if (phi[j] > ress[i][j]) feasible = false;
      }
    }
    if (mode == FitMode::constrained && !feasible) continue;
    if (!best || loss < best_loss) {
      best = t;
      best_loss = loss;
    }
  }
  if (!best)
    throw Error(Errc::empty_feasible_set, "no candidate satisfies every sample constraint");
  return {*best, best_loss};
}

}  // namespace pudp

#pragma once

// Shared test utilities: independent reference implementations ("oracles")
// that recompute expected results by the most direct method available, plus
// a type-directed random generator for wiring expressions.  Everything here
// is deliberately written against the public API only, using code paths that
// differ from the library's internals.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pudp/bundle.hpp"
#include "pudp/diagram.hpp"
#include "pudp/lawcheck.hpp"
#include "pudp/query.hpp"

namespace pudp::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(PUDP_FIXTURE_DIR) + "/" + name;
}

// --- brute-force oracles -------------------------------------------------

// Composition by the defining triple loop, no bitset tricks.
inline DesignProblem oracle_compose(const DesignProblem& a, const DesignProblem& b) {
  size_t nf = a.fun->size(), nm = a.res->size(), nq = b.res->size();
  std::vector<std::vector<bool>> rows(nf, std::vector<bool>(nq, false));
  for (size_t f = 0; f < nf; ++f)
    for (size_t q = 0; q < nq; ++q)
      for (size_t m = 0; m < nm; ++m)
        if (a.feas(f, m) && b.feas(m, q)) rows[f][q] = true;
  return mk_dp(a.fun, b.res, rows);
}

// Tensor by explicit flat-index arithmetic (left factor slowest).
inline DesignProblem oracle_tensor(const DesignProblem& a, const DesignProblem& b) {
  size_t nf1 = a.fun->size(), nf2 = b.fun->size();
  size_t nr1 = a.res->size(), nr2 = b.res->size();
  std::vector<std::vector<bool>> rows(nf1 * nf2, std::vector<bool>(nr1 * nr2, false));
  for (size_t f1 = 0; f1 < nf1; ++f1)
    for (size_t f2 = 0; f2 < nf2; ++f2)
      for (size_t r1 = 0; r1 < nr1; ++r1)
        for (size_t r2 = 0; r2 < nr2; ++r2)
          rows[f1 * nf2 + f2][r1 * nr2 + r2] = a.feas(f1, r1) && b.feas(f2, r2);
  return mk_dp(product(a.fun, b.fun), product(a.res, b.res), rows);
}

// Minimal feasible resources for one functionality row, O(|R|^2) double loop.
inline std::vector<size_t> oracle_front(const DesignProblem& dp, size_t f) {
  std::vector<size_t> feas;
  for (size_t r = 0; r < dp.res->size(); ++r)
    if (dp.feas(f, r)) feas.push_back(r);
  std::vector<size_t> out;
  for (size_t r : feas) {
    bool minimal = true;
    for (size_t r2 : feas)
      if (r2 != r && dp.res->leq(r2, r) && !dp.res->leq(r, r2)) minimal = false;
    if (minimal) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- random well-typed wiring expressions --------------------------------

// Environment with enough variety for generated diagrams: endo-cells on an
// atomic poset P, a cell on the product W (x) P, and an identity repar on
// the unit parameter space (so repar nodes stay well-typed anywhere).
inline DiagramEnv generator_env(MonadKind kind = MonadKind::identity) {
  DiagramEnv env;
  env.kind = kind;
  Poset P = chain({"0", "1"}, "p");
  Poset W = chain({"0", "1", "2"}, "w");
  env.posets["P"] = P;
  env.posets["W"] = W;
  env.cells["A"] = include(kind, identity_dp(P));
  env.cells["B"] = include(kind, all_feasible(P, P));
  Poset WP = product(W, P);
  env.cells["E"] = include(kind, identity_dp(WP));
  env.repars["r0"] = identity_repar(kind, ParamSpace{});
  return env;
}

inline ExprPtr mk_node(DiagramExpr::Kind kind, std::string name = "", std::string name2 = "",
                       ExprPtr left = nullptr, ExprPtr right = nullptr) {
  auto n = std::make_shared<DiagramExpr>();
  n->kind = kind;
  n->name = std::move(name);
  n->name2 = std::move(name2);
  n->left = std::move(left);
  n->right = std::move(right);
  return n;
}

// Builds a random expression tree over generator_env() by rejection: grow a
// random tree, keep it only if it typechecks.  Returns a well-typed tree.
inline ExprPtr random_well_typed_expr(Rng& rng, const DiagramEnv& env, size_t max_depth = 4) {
  using K = DiagramExpr::Kind;
  std::function<ExprPtr(size_t)> grow = [&](size_t depth) -> ExprPtr {
    size_t pick = rng.uniform(depth == 0 ? 7 : 10);
    switch (pick) {
      case 0: return mk_node(K::ref, "A");
      case 1: return mk_node(K::ref, "B");
      case 2: return mk_node(K::ref, "E");
      case 3: return mk_node(K::id, rng.coin() ? "P" : "W");
      case 4: return mk_node(K::sym, rng.coin() ? "P" : "W", rng.coin() ? "P" : "W");
      case 5: return mk_node(K::cap, "P");
      case 6: return mk_node(K::cup, "P");
      case 7: return mk_node(K::seq, "", "", grow(depth - 1), grow(depth - 1));
      case 8: return mk_node(K::par, "", "", grow(depth - 1), grow(depth - 1));
      default:
        switch (rng.uniform(3)) {
          case 0: return mk_node(K::loop, "w", "", grow(depth - 1));
          case 1: return mk_node(K::repar, "r0", "", grow(depth - 1));
          default: return mk_node(K::par, "", "", grow(depth - 1), grow(depth - 1));
        }
    }
  };
  for (;;) {
    ExprPtr e = grow(1 + rng.uniform(max_depth));
    try {
      typecheck_diagram(*e, env);
      return e;
    } catch (const Error&) {
      // ill-typed draw; try again
    }
  }
}

}  // namespace pudp::testing

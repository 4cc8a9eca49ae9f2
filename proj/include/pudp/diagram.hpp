#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "pudp/para.hpp"

namespace pudp {

// Wiring expressions:
//   expr := term (';' term)*
//   term := atom ('|' atom)*
//   atom := NAME | id(P) | sym(P,Q) | cap(P) | cup(P)
//         | loop[wire](expr) | repar[NAME](expr) | '(' expr ')'
// ';' composes in series, '|' in parallel; loop closes a feedback wire named
// by a factor present on both sides; repar precomposes a reparametrization.
struct DiagramExpr {
  enum class Kind { ref, seq, par, id, sym, cap, cup, loop, repar };
  Kind kind;
  int line = 0, col = 0;                      // start of the node, 1-based
  std::string name, name2;                    // ref/loop/repar names, poset names
  std::shared_ptr<const DiagramExpr> left, right;
};

using ExprPtr = std::shared_ptr<const DiagramExpr>;

ExprPtr parse_diagram(std::string_view text);

// Canonical text; parse(print(e)) rebuilds e (spans aside).
std::string print_diagram(const DiagramExpr& e);

bool expr_equal(const DiagramExpr& a, const DiagramExpr& b);

struct DiagramEnv {
  MonadKind kind = MonadKind::identity;
  std::map<std::string, ParamCell> cells;
  std::map<std::string, Repar> repars;
  std::map<std::string, Poset> posets;
};

struct CellInterface {
  ParamSpace dom;
  Poset src, tgt;
};

// Interface of the composite, or a positioned error on the offending node.
CellInterface typecheck_diagram(const DiagramExpr& e, const DiagramEnv& env);

ParamCell eval_diagram(const DiagramExpr& e, const DiagramEnv& env);

// Trace over the unique factor named `wire` in both interfaces of the cell:
// par with cap, braid, compose, par with cup.  Exposed for direct API use.
ParamCell loop_cell(const ParamCell& cell, const std::string& wire);

}  // namespace pudp

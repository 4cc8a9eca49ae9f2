#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pudp/monad.hpp"

namespace pudp {

// One axis of a parameter space: named points, optionally ordered (the order
// poset must list exactly the same atoms in the same positions).
struct ParamFactor {
  std::string name;
  std::vector<std::string> points;
  Poset order;  // may be null: discrete factor
};

// Flat list of factors; the empty list is the strict tensor unit (one point).
class ParamSpace {
 public:
  ParamSpace() = default;
  explicit ParamSpace(std::vector<ParamFactor> factors);

  size_t num_factors() const { return factors_.size(); }
  const ParamFactor& factor(size_t i) const { return factors_[i]; }
  const std::vector<ParamFactor>& factors() const { return factors_; }
  size_t num_points() const { return points_; }

  std::vector<uint32_t> coords(size_t flat) const;
  size_t flat(const std::vector<uint32_t>& coords) const;
  std::string point_str(size_t flat) const;  // "a,b" (empty for the unit)

  // Product order; factors without an order compare by equality.
  bool point_leq(size_t a, size_t b) const;
  bool any_ordered() const;

 private:
  std::vector<ParamFactor> factors_;
  size_t points_ = 1;
};

ParamSpace tensor(const ParamSpace& a, const ParamSpace& b);
bool space_equal(const ParamSpace& a, const ParamSpace& b);

// 1-cell: a Kleisli arrow from a parameter space into design problems with a
// fixed interface.  table is indexed by flat point.
struct ParamCell {
  MonadKind kind;
  ParamSpace dom;
  Poset src, tgt;
  std::vector<Uncertain<DesignProblem>> table;

  const Uncertain<DesignProblem>& at(size_t point) const { return table[point]; }
};

// Validates payload kinds, interfaces, interval order, distribution mass, and
// (for identity/interval kinds over ordered factors) monotonicity.
ParamCell make_cell(MonadKind kind, ParamSpace dom, Poset src, Poset tgt,
                    std::vector<Uncertain<DesignProblem>> table);

// Identity-on-objects inclusion of plain DPs: unit parameter space, eta payload.
ParamCell include(MonadKind kind, const DesignProblem& dp);

// Horizontal composition / tensor: parameter spaces tensor, payloads combine
// through the strength and the lifted DP operation.
ParamCell hcompose(const ParamCell& f, const ParamCell& g);
ParamCell tensor_cell(const ParamCell& f, const ParamCell& g);

// 2-cell: a Kleisli arrow between parameter spaces (targets by flat index).
struct Repar {
  MonadKind kind;
  ParamSpace dom, cod;
  std::vector<Uncertain<uint32_t>> table;

  const Uncertain<uint32_t>& at(size_t point) const { return table[point]; }
};

Repar make_repar(MonadKind kind, ParamSpace dom, ParamSpace cod,
                 std::vector<Uncertain<uint32_t>> table);
Repar identity_repar(MonadKind kind, const ParamSpace& s);

// Kleisli composition of reparametrizations (vertical composition).
Repar vcompose(const Repar& phi, const Repar& psi);

// Does phi witness f = phi ; g?
bool check_2cell(const Repar& phi, const ParamCell& f, const ParamCell& g,
                 double tol = kTvTol);

Repar hcompose_2cells(const Repar& phi1, const Repar& phi2);

// The middle-four interchange witness:
//   (U1 (x) U2) (x) (V1 (x) V2)  ->  (U1 (x) V1) (x) (U2 (x) V2),
// a deterministic coordinate permutation, eta-lifted.
Repar tensorator(const ParamCell& f1, const ParamCell& f2, const ParamCell& g1,
                 const ParamCell& g2);

// (a, b) -> eta(b, a); witnesses naturality of the lifted braiding.
Repar swap_repar(MonadKind kind, const ParamSpace& a, const ParamSpace& b);

enum class Coherence { assoc, lunit, runit, sym };

// assoc/lunit/runit are identities after flattening; sym lifts the braiding DP.
// objects: {P,Q,R} for assoc, {P} for units, {P,Q} for sym.
ParamCell coherence_cell(MonadKind kind, Coherence which, const std::vector<Poset>& objects);

// Precomposition with a reparametrization: point a |-> bind(phi(a), cell).
ParamCell reparametrize(const ParamCell& cell, const Repar& phi);

bool cells_equal(const ParamCell& a, const ParamCell& b, double tol = kTvTol);
bool repars_equal(const Repar& a, const Repar& b, double tol = kTvTol);

}  // namespace pudp

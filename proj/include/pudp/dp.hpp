#pragma once

#include <functional>
#include <vector>

#include "pudp/poset.hpp"

namespace pudp {

// A design problem is a monotone feasibility relation fun^op x res -> Bool,
// stored as one bit row per functionality element over the resource poset.
struct DesignProblem {
  Poset fun, res;
  std::vector<Bitset> rows;  // rows[f][r] == feasible

  bool feas(size_t f, size_t r) const { return rows[f].test(r); }
};

// Validates shape and monotonicity: shrinking f or growing r keeps feasibility.
DesignProblem mk_dp(Poset fun, Poset res, std::vector<Bitset> rows);
DesignProblem mk_dp(Poset fun, Poset res, const std::vector<std::vector<bool>>& rows);

// phi maps fun-grid coordinates to one rational per res factor;
// feas(f, r) = [phi(f) <= r] componentwise in numeric order.
using ThresholdFn = std::function<std::vector<Rat>(const std::vector<Rat>&)>;
DesignProblem threshold_dp(const Poset& fun_grid, const Poset& res_grid, const ThresholdFn& phi);

// (a ; b)(f, q) = OR_r a(f, r) AND b(r, q); shared poset checked for equality.
DesignProblem compose(const DesignProblem& a, const DesignProblem& b);

// (a (x) b)((f1,f2), (r1,r2)) = a(f1, r1) AND b(f2, r2) on flattened products.
DesignProblem tensor(const DesignProblem& a, const DesignProblem& b);

DesignProblem identity_dp(const Poset& p);  // feas(f, r) = [f <= r]

// Compact closed structure.  cap: Unit -> P^op (x) P with feas(*,(a,b)) = [a <= b];
// cup: P (x) P^op -> Unit with feas((a,b),*) = [a <= b]; both in P's order.
DesignProblem cap(const Poset& p);
DesignProblem cup(const Poset& p);

// Braiding at DP level: P (x) Q -> Q (x) P, feas((p,q),(q2,p2)) = [p<=p2][q<=q2].
DesignProblem sym_dp(const Poset& p, const Poset& q);

bool same_interfaces(const DesignProblem& a, const DesignProblem& b);
bool dp_equal(const DesignProblem& a, const DesignProblem& b);

// Pointwise implication order; a <= b means b is at least as feasible.
bool leq_dp(const DesignProblem& a, const DesignProblem& b);

// Pointwise lattice operations (useful for bracketing a DP between bounds).
DesignProblem meet_dp(const DesignProblem& a, const DesignProblem& b);
DesignProblem join_dp(const DesignProblem& a, const DesignProblem& b);

DesignProblem none_feasible(Poset fun, Poset res);
DesignProblem all_feasible(Poset fun, Poset res);

// Strict total order for canonical sorting of DP collections.
bool dp_less(const DesignProblem& a, const DesignProblem& b);

// The coordinate-permutation isomorphism
//   product(factors) -> product(factors[perm[0]], ..., factors[perm[m-1]]),
// as a DP: feas(x, y) = AND_k [x_{perm[k]} <= y_k].
DesignProblem permutation_dp(const std::vector<Poset>& factors, const std::vector<size_t>& perm);

}  // namespace pudp

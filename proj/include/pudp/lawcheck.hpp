#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pudp/para.hpp"

namespace pudp {

// Deterministic source for every sampled suite; identical seeds give
// identical reports.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  size_t uniform(size_t n) { return n ? static_cast<size_t>(g_() % n) : 0; }
  bool coin(double p = 0.5) { return unit() < p; }
  double unit() { return static_cast<double>(g_() >> 11) * 0x1p-53; }

 private:
  std::mt19937_64 g_;
};

Poset random_poset(Rng& rng, size_t max_size);
Poset random_grid(Rng& rng, size_t max_axes, size_t max_points);
DesignProblem random_dp(Rng& rng, const Poset& fun, const Poset& res);
Uncertain<DesignProblem> random_payload(Rng& rng, MonadKind kind, const Poset& src,
                                        const Poset& tgt);
ParamSpace random_space(Rng& rng, size_t max_factors, size_t max_points, bool ordered = false);
ParamCell random_cell(Rng& rng, MonadKind kind, const Poset& src, const Poset& tgt,
                      size_t max_factors = 2, size_t max_points = 3);

// Every monotone feasibility matrix between two (small) posets.
std::vector<DesignProblem> all_dps(const Poset& fun, const Poset& res);

// Fixed poset catalog: all shapes on <= 2 points, plus representative shapes
// on 3-4 points for the snake checks.
std::vector<Poset> poset_catalog_2();
std::vector<Poset> poset_catalog_4();

struct LawResult {
  std::string name;
  bool pass;
  std::string witness;  // empty when pass
};

struct LawReport {
  std::vector<LawResult> results;
  bool all_pass() const;
  void add(std::string name, bool pass, std::string witness = "");
};

struct LawOptions {
  uint64_t seed = 0;
  int samples = 200;
  double tol = kTvTol;
  // Fault injection: interval join returns [c,b] instead of [a,d]; the
  // associativity checks must then fail.
  bool corrupt_interval_join = false;
};

// Category laws of plain DPs: composition associativity/unitality, strict
// interchange, both snakes; exhaustive on tiny posets plus random instances.
LawReport dp_law_suite(const LawOptions& opt);

// Unit/associativity, strength naturality, eta/mu monoidality, affineness,
// symmetry commutation for one uncertainty kind.
LawReport monad_law_suite(MonadKind kind, const LawOptions& opt);

// Laws of parametrized cells: hcompose associativity/unitality, interchange
// up to the tensorator, inclusion strictness/faithfulness, braiding laws.
LawReport para_law_suite(MonadKind kind, const LawOptions& opt);

}  // namespace pudp

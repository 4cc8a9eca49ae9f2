#pragma once

#include <boost/dynamic_bitset.hpp>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pudp/rational.hpp"

namespace pudp {

using Bitset = boost::dynamic_bitset<>;

// An element of a poset is a flat tuple of atoms, one per factor.  Atomic
// posets have arity 1; the monoidal unit has arity 0 and a single empty
// label.  Keeping products flat makes the object-level tensor strictly
// associative with the unit as a strict identity.
using Label = std::vector<std::string>;

std::string label_str(const Label& l);  // "a" / "(a,b)" / "()"

class FinPoset {
 public:
  // `leq_pairs` holds any generating relation; the constructor adds
  // reflexivity, closes transitively and rejects cycles.
  FinPoset(std::vector<Label> labels, std::vector<std::string> factor_names,
           const std::vector<std::pair<size_t, size_t>>& leq_pairs);

  size_t size() const { return labels_.size(); }
  size_t arity() const { return factor_names_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(size_t i) const { return labels_[i]; }
  const std::vector<std::string>& factor_names() const { return factor_names_; }

  bool leq(size_t a, size_t b) const { return up_[a].test(b); }
  const Bitset& upset(size_t i) const { return up_[i]; }      // {j : i <= j}
  const Bitset& downset(size_t i) const { return down_[i]; }  // {j : j <= i}

  std::optional<size_t> index_of(const Label& l) const;

 private:
  FinPoset() = default;
  friend std::shared_ptr<const FinPoset> raw_poset(std::vector<Label>,
                                                   std::vector<std::string>,
                                                   std::vector<Bitset>);
  std::vector<Label> labels_;
  std::vector<std::string> factor_names_;
  std::vector<Bitset> up_, down_;
};

using Poset = std::shared_ptr<const FinPoset>;

// Arity-1 poset from explicit atoms and generating pairs (by atom).
Poset mk_poset(const std::vector<std::string>& elements,
               const std::vector<std::pair<std::string, std::string>>& leq_pairs);

// Ascending chain in list order, arity 1.
Poset chain(const std::vector<std::string>& atoms, const std::string& factor_name = "");

// The 0-factor poset with one (empty) element: the monoidal unit.
Poset unit_poset();

// Flattened product: factor lists concatenate, elements pair off
// lexicographically (left factor slowest), order is componentwise.
Poset product(const Poset& p, const Poset& q);

Poset opposite(const Poset& p);

struct GridAxis {
  std::string name;
  std::vector<Rat> values;  // strictly increasing
  bool ascending = true;    // false: the axis contributes its opposite chain
};

// Product of rational sample chains; element atoms are canonical rational
// strings, factor names come from the axes.
Poset grid_poset(const std::vector<GridAxis>& axes);

bool poset_equal(const FinPoset& a, const FinPoset& b);  // labels and order agree

struct Antichain {
  Poset poset;
  std::vector<size_t> members;  // sorted, pairwise incomparable
};

bool antichain_equal(const Antichain& a, const Antichain& b);

// A <= B in the domination order: every member of B sits above some member
// of A.  Fronts of more feasible problems are <= fronts of less feasible ones.
bool antichain_leq(const Antichain& a, const Antichain& b);

// Minimal elements of an arbitrary subset (given as indices).
Antichain minimal_elements(const Poset& p, const std::vector<size_t>& subset);
Antichain minimal_elements(const Poset& p, const Bitset& subset);

// Total map given as q-indices per p-element; true iff order-preserving.
bool is_monotone(const FinPoset& p, const FinPoset& q, const std::vector<size_t>& map);

// Parse every atom of a label as a rational coordinate.
std::vector<Rat> label_coords(const Label& l);

// A grid of exactly one ascending axis: total order whose element sequence
// is strictly increasing rationals.  Returns the coordinates in element order.
std::optional<std::vector<Rat>> ascending_chain_coords(const FinPoset& p);

// Decompose a flattened product into its factors (arity-1 posets keeping the
// factor name).  Throws unless the elements form the full Cartesian product
// of the per-position atom sets with the componentwise order.
std::vector<Poset> split_factors(const Poset& p);

// Fold of product(); the empty list gives the unit poset.
Poset product_all(const std::vector<Poset>& factors);

}  // namespace pudp

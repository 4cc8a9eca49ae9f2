#include "pudp/poset.hpp"

#include <algorithm>
#include <map>

#include "pudp/errors.hpp"

namespace pudp {

std::string label_str(const Label& l) {
  if (l.size() == 1) return l[0];
  std::string out = "(";
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) out += ",";
    out += l[i];
  }
  return out + ")";
}

namespace {

void check_unique(const std::vector<Label>& labels) {
  std::map<Label, size_t> seen;
  for (size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = seen.emplace(labels[i], i);
    if (!fresh)
      throw Error(Errc::duplicate_element, "element '" + label_str(labels[i]) + "' listed twice");
  }
}

std::vector<Bitset> transpose(const std::vector<Bitset>& rows, size_t n) {
  std::vector<Bitset> cols(n, Bitset(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = rows[i].find_first(); j != Bitset::npos; j = rows[i].find_next(j))
      cols[j].set(i);
  return cols;
}

}  // namespace

FinPoset::FinPoset(std::vector<Label> labels, std::vector<std::string> factor_names,
                   const std::vector<std::pair<size_t, size_t>>& leq_pairs)
    : labels_(std::move(labels)), factor_names_(std::move(factor_names)) {
  check_unique(labels_);
  const size_t n = labels_.size();
  for (const auto& l : labels_)
    if (l.size() != factor_names_.size())
      throw Error(Errc::shape_mismatch, "label arity differs from factor count");
  up_.assign(n, Bitset(n));
  for (size_t i = 0; i < n; ++i) up_[i].set(i);
  for (auto [a, b] : leq_pairs) {
    if (a >= n || b >= n) throw Error(Errc::unknown_element, "relation index out of range");
    up_[a].set(b);
  }
  // Warshall over bit rows.
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (up_[i].test(k)) up_[i] |= up_[k];
  for (size_t i = 0; i < n; ++i)
    for (size_t j = up_[i].find_first(); j != Bitset::npos; j = up_[i].find_next(j))
      if (j != i && up_[j].test(i))
        throw Error(Errc::antisymmetry_violation, "cycle through '" + label_str(labels_[i]) +
                                                      "' and '" + label_str(labels_[j]) + "'");
  down_ = transpose(up_, n);
}

Poset raw_poset(std::vector<Label> labels, std::vector<std::string> names,
                std::vector<Bitset> up) {
  check_unique(labels);
  auto p = std::shared_ptr<FinPoset>(new FinPoset());
  p->labels_ = std::move(labels);
  p->factor_names_ = std::move(names);
  p->up_ = std::move(up);
  p->down_ = transpose(p->up_, p->labels_.size());
  return p;
}

std::optional<size_t> FinPoset::index_of(const Label& l) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == l) return i;
  return std::nullopt;
}

Poset mk_poset(const std::vector<std::string>& elements,
               const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  std::vector<Label> labels;
  labels.reserve(elements.size());
  std::map<std::string, size_t> idx;
  for (const auto& e : elements) {
    if (!idx.emplace(e, labels.size()).second)
      throw Error(Errc::duplicate_element, "element '" + e + "' listed twice");
    labels.push_back({e});
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  pairs.reserve(leq_pairs.size());
  for (const auto& [a, b] : leq_pairs) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw Error(Errc::unknown_element, "'" + a + "' not an element");
    if (ib == idx.end()) throw Error(Errc::unknown_element, "'" + b + "' not an element");
    pairs.emplace_back(ia->second, ib->second);
  }
  return std::make_shared<const FinPoset>(std::move(labels), std::vector<std::string>{""},
                                          pairs);
}

Poset chain(const std::vector<std::string>& atoms, const std::string& factor_name) {
  const size_t n = atoms.size();
  std::vector<Label> labels;
  labels.reserve(n);
  for (const auto& a : atoms) labels.push_back({a});
  std::vector<Bitset> up(n, Bitset(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) up[i].set(j);
  return raw_poset(std::move(labels), {factor_name}, std::move(up));
}

Poset unit_poset() {
  static const Poset unit = raw_poset({Label{}}, {}, {Bitset(1).set(0)});
  return unit;
}

Poset product(const Poset& p, const Poset& q) {
  const size_t np = p->size(), nq = q->size(), n = np * nq;
  std::vector<Label> labels;
  labels.reserve(n);
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < nq; ++j) {
      Label l = p->label(i);
      const Label& r = q->label(j);
      l.insert(l.end(), r.begin(), r.end());
      labels.push_back(std::move(l));
    }
  std::vector<std::string> names = p->factor_names();
  names.insert(names.end(), q->factor_names().begin(), q->factor_names().end());
  std::vector<Bitset> up(n, Bitset(n));
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < nq; ++j) {
      Bitset& row = up[i * nq + j];
      const Bitset& pi = p->upset(i);
      const Bitset& qj = q->upset(j);
      for (size_t i2 = pi.find_first(); i2 != Bitset::npos; i2 = pi.find_next(i2))
        for (size_t j2 = qj.find_first(); j2 != Bitset::npos; j2 = qj.find_next(j2))
          row.set(i2 * nq + j2);
    }
  return raw_poset(std::move(labels), std::move(names), std::move(up));
}

Poset opposite(const Poset& p) {
  const size_t n = p->size();
  std::vector<Bitset> up(n, Bitset(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (p->leq(j, i)) up[i].set(j);
  return raw_poset(p->labels(), p->factor_names(), std::move(up));
}

Poset grid_poset(const std::vector<GridAxis>& axes) {
  Poset acc = unit_poset();
  for (const auto& ax : axes) {
    if (ax.values.empty()) throw Error(Errc::empty_axis, "axis '" + ax.name + "' has no values");
    for (size_t i = 1; i < ax.values.size(); ++i)
      if (!(ax.values[i - 1] < ax.values[i]))
        throw Error(Errc::invalid_value,
                    "axis '" + ax.name + "' values must be strictly increasing");
    std::vector<std::string> atoms;
    atoms.reserve(ax.values.size());
    for (const auto& v : ax.values) atoms.push_back(rat_str(v));
    Poset c = chain(atoms, ax.name);
    acc = product(acc, ax.ascending ? c : opposite(c));
  }
  return acc;
}

bool poset_equal(const FinPoset& a, const FinPoset& b) {
  if (a.size() != b.size() || a.labels() != b.labels()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a.upset(i) != b.upset(i)) return false;
  return true;
}

bool antichain_equal(const Antichain& a, const Antichain& b) {
  return a.members == b.members && poset_equal(*a.poset, *b.poset);
}

bool antichain_leq(const Antichain& a, const Antichain& b) {
  for (size_t m : b.members) {
    bool covered = false;
    for (size_t x : a.members)
      if (a.poset->leq(x, m)) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

Antichain minimal_elements(const Poset& p, const Bitset& subset) {
  if (subset.size() != p->size()) throw Error(Errc::shape_mismatch, "subset size mismatch");
  Antichain out{p, {}};
  for (size_t i = subset.find_first(); i != Bitset::npos; i = subset.find_next(i)) {
    Bitset below = p->downset(i) & subset;
    below.reset(i);
    if (below.none()) out.members.push_back(i);
  }
  return out;
}

Antichain minimal_elements(const Poset& p, const std::vector<size_t>& subset) {
  Bitset s(p->size());
  for (size_t i : subset) {
    if (i >= p->size()) throw Error(Errc::unknown_element, "subset index out of range");
    s.set(i);
  }
  return minimal_elements(p, s);
}

bool is_monotone(const FinPoset& p, const FinPoset& q, const std::vector<size_t>& map) {
  if (map.size() != p.size())
    throw Error(Errc::partial_map, "map must assign every element");
  for (size_t v : map)
    if (v >= q.size()) throw Error(Errc::unknown_element, "map value out of range");
  for (size_t i = 0; i < p.size(); ++i) {
    const Bitset& up = p.upset(i);
    for (size_t j = up.find_first(); j != Bitset::npos; j = up.find_next(j))
      if (!q.leq(map[i], map[j])) return false;
  }
  return true;
}

std::vector<Rat> label_coords(const Label& l) {
  std::vector<Rat> out;
  out.reserve(l.size());
  for (const auto& atom : l) out.push_back(rat_parse(atom));
  return out;
}

Poset product_all(const std::vector<Poset>& factors) {
  Poset acc = unit_poset();
  for (const auto& f : factors) acc = product(acc, f);
  return acc;
}

std::vector<Poset> split_factors(const Poset& p) {
  const size_t m = p->arity(), n = p->size();
  std::vector<std::vector<std::string>> atoms(m);
  for (size_t k = 0; k < m; ++k) {
    for (size_t i = 0; i < n; ++i) {
      const std::string& a = p->label(i)[k];
      auto& v = atoms[k];
      if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
    }
  }
  size_t expect = 1;
  for (const auto& v : atoms) expect *= v.size();
  if (expect != n)
    throw Error(Errc::shape_mismatch, "poset is not a full product of its factors");
  // Element order must be lexicographic in first-occurrence atom order.
  std::vector<size_t> radix(m);
  for (size_t k = 0; k < m; ++k) radix[k] = atoms[k].size();
  auto coord_of = [&](size_t i, size_t k) {
    const auto& v = atoms[k];
    return static_cast<size_t>(
        std::find(v.begin(), v.end(), p->label(i)[k]) - v.begin());
  };
  for (size_t i = 0; i < n; ++i) {
    size_t flat = 0;
    for (size_t k = 0; k < m; ++k) flat = flat * radix[k] + coord_of(i, k);
    if (flat != i)
      throw Error(Errc::shape_mismatch, "poset is not a full product of its factors");
  }
  // Factor order read off along single-coordinate moves, then validated.
  std::vector<Poset> out;
  out.reserve(m);
  std::vector<size_t> stride(m, 1);
  for (size_t k = m; k-- > 1;) stride[k - 1] = stride[k] * radix[k];
  for (size_t k = 0; k < m; ++k) {
    const size_t nk = radix[k];
    std::vector<Bitset> up(nk, Bitset(nk));
    for (size_t a = 0; a < nk; ++a)
      for (size_t b = 0; b < nk; ++b)
        if (p->leq(a * stride[k], b * stride[k])) up[a].set(b);
    std::vector<Label> labels;
    labels.reserve(nk);
    for (const auto& a : atoms[k]) labels.push_back({a});
    out.push_back(raw_poset(std::move(labels), {p->factor_names()[k]}, std::move(up)));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      bool componentwise = true;
      for (size_t k = 0; k < m && componentwise; ++k)
        componentwise = out[k]->leq(coord_of(i, k), coord_of(j, k));
      if (p->leq(i, j) != componentwise)
        throw Error(Errc::shape_mismatch, "poset order is not the product of factor orders");
    }
  return out;
}

std::optional<std::vector<Rat>> ascending_chain_coords(const FinPoset& p) {
  if (p.arity() != 1 || p.size() == 0) return std::nullopt;
  std::vector<Rat> coords;
  coords.reserve(p.size());
  try {
    for (size_t i = 0; i < p.size(); ++i) coords.push_back(rat_parse(p.label(i)[0]));
  } catch (const Error&) {
    return std::nullopt;
  }
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < p.size(); ++j)
      if (p.leq(i, j) != (coords[i] <= coords[j])) return std::nullopt;
  return coords;
}

}  // namespace pudp

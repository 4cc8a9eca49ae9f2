#include "pudp/para.hpp"

#include <algorithm>

namespace pudp {

ParamSpace::ParamSpace(std::vector<ParamFactor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.points.empty())
      throw Error(Errc::empty_axis, "parameter factor '" + f.name + "' has no points");
    if (f.order) {
      if (f.order->arity() != 1 || f.order->size() != f.points.size())
        throw Error(Errc::shape_mismatch, "order poset does not match factor '" + f.name + "'");
      for (size_t i = 0; i < f.points.size(); ++i)
        if (f.order->label(i)[0] != f.points[i])
          throw Error(Errc::shape_mismatch,
                      "order poset atoms differ from factor '" + f.name + "' points");
    }
    points_ *= f.points.size();
  }
}

std::vector<uint32_t> ParamSpace::coords(size_t flat) const {
  std::vector<uint32_t> c(factors_.size());
  for (size_t i = factors_.size(); i-- > 0;) {
    size_t n = factors_[i].points.size();
    c[i] = static_cast<uint32_t>(flat % n);
    flat /= n;
  }
  return c;
}

size_t ParamSpace::flat(const std::vector<uint32_t>& coords) const {
  size_t idx = 0;
  for (size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i].points.size() + coords[i];
  return idx;
}

std::string ParamSpace::point_str(size_t flat) const {
  auto c = coords(flat);
  std::string out;
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += ",";
    out += factors_[i].points[c[i]];
  }
  return out;
}

bool ParamSpace::point_leq(size_t a, size_t b) const {
  auto ca = coords(a), cb = coords(b);
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].order) {
      if (!factors_[i].order->leq(ca[i], cb[i])) return false;
    } else if (ca[i] != cb[i]) {
      return false;
    }
  }
  return true;
}

bool ParamSpace::any_ordered() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const ParamFactor& f) { return static_cast<bool>(f.order); });
}

ParamSpace tensor(const ParamSpace& a, const ParamSpace& b) {
  std::vector<ParamFactor> fs = a.factors();
  fs.insert(fs.end(), b.factors().begin(), b.factors().end());
  return ParamSpace(std::move(fs));
}

bool space_equal(const ParamSpace& a, const ParamSpace& b) {
  if (a.num_factors() != b.num_factors()) return false;
  for (size_t i = 0; i < a.num_factors(); ++i) {
    const auto& fa = a.factor(i);
    const auto& fb = b.factor(i);
    if (fa.name != fb.name || fa.points != fb.points) return false;
    if (static_cast<bool>(fa.order) != static_cast<bool>(fb.order)) return false;
    if (fa.order && !poset_equal(*fa.order, *fb.order)) return false;
  }
  return true;
}

namespace {

void check_payload(const ParamCell& c, const Uncertain<DesignProblem>& v) {
  if (v.kind != c.kind) throw Error(Errc::kind_mismatch, "payload kind differs from cell kind");
  if (v.items.empty()) throw Error(Errc::invalid_value, "empty payload");
  for (const auto& dp : v.items)
    if (!poset_equal(*dp.fun, *c.src) || !poset_equal(*dp.res, *c.tgt))
      throw Error(Errc::interface_mismatch, "payload DP interface differs from cell interface");
  switch (v.kind) {
    case MonadKind::identity:
      if (v.items.size() != 1) throw Error(Errc::invalid_value, "identity payload must be a point");
      break;
    case MonadKind::interval:
      if (v.items.size() != 2) throw Error(Errc::invalid_interval, "interval needs two endpoints");
      if (!leq_dp(v.items[0], v.items[1]))
        throw Error(Errc::invalid_interval, "interval endpoints out of order");
      break;
    case MonadKind::distribution: {
      double mass = 0.0;
      for (double p : v.probs) {
        if (!(p >= 0.0)) throw Error(Errc::invalid_distribution, "negative probability");
        mass += p;
      }
      if (std::abs(mass - 1.0) > kTvTol)
        throw Error(Errc::invalid_distribution, "mass differs from 1 beyond tolerance");
      break;
    }
    default: break;
  }
}

// Pointwise DP order lifted to payloads (identity / interval kinds).
bool payload_leq(const Uncertain<DesignProblem>& a, const Uncertain<DesignProblem>& b) {
  for (size_t i = 0; i < a.items.size(); ++i)
    if (!leq_dp(a.items[i], b.items[i])) return false;
  return true;
}

}  // namespace

ParamCell make_cell(MonadKind kind, ParamSpace dom, Poset src, Poset tgt,
                    std::vector<Uncertain<DesignProblem>> table) {
  ParamCell c{kind, std::move(dom), std::move(src), std::move(tgt), std::move(table)};
  if (c.table.size() != c.dom.num_points())
    throw Error(Errc::shape_mismatch, "table size differs from parameter point count");
  for (const auto& v : c.table) check_payload(c, v);
  const bool monotone_variant =
      c.dom.any_ordered() &&
      (kind == MonadKind::identity || kind == MonadKind::interval);
  if (monotone_variant) {
    const size_t n = c.dom.num_points();
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        if (a != b && c.dom.point_leq(a, b) && !payload_leq(c.table[a], c.table[b]))
          throw Error(Errc::monotonicity_violation,
                      "assignment not monotone between points '" + c.dom.point_str(a) +
                          "' and '" + c.dom.point_str(b) + "'");
  }
  return c;
}

ParamCell include(MonadKind kind, const DesignProblem& dp) {
  return ParamCell{kind, ParamSpace(), dp.fun, dp.res, {unit(kind, dp)}};
}

ParamCell hcompose(const ParamCell& f, const ParamCell& g) {
  if (f.kind != g.kind) throw Error(Errc::kind_mismatch, "mixed monad kinds");
  if (!poset_equal(*f.tgt, *g.src))
    throw Error(Errc::interface_mismatch, "tgt of left cell differs from src of right cell");
  ParamCell out{f.kind, tensor(f.dom, g.dom), f.src, g.tgt, {}};
  out.table.reserve(f.table.size() * g.table.size());
  for (const auto& fv : f.table)
    for (const auto& gv : g.table)
      out.table.push_back(map2_uncertain(
          fv, gv, [](const DesignProblem& a, const DesignProblem& b) { return compose(a, b); }));
  return out;
}

ParamCell tensor_cell(const ParamCell& f, const ParamCell& g) {
  if (f.kind != g.kind) throw Error(Errc::kind_mismatch, "mixed monad kinds");
  ParamCell out{f.kind, tensor(f.dom, g.dom), product(f.src, g.src), product(f.tgt, g.tgt), {}};
  out.table.reserve(f.table.size() * g.table.size());
  for (const auto& fv : f.table)
    for (const auto& gv : g.table)
      out.table.push_back(map2_uncertain(
          fv, gv, [](const DesignProblem& a, const DesignProblem& b) { return tensor(a, b); }));
  return out;
}

Repar make_repar(MonadKind kind, ParamSpace dom, ParamSpace cod,
                 std::vector<Uncertain<uint32_t>> table) {
  Repar r{kind, std::move(dom), std::move(cod), std::move(table)};
  if (r.table.size() != r.dom.num_points())
    throw Error(Errc::shape_mismatch, "table size differs from parameter point count");
  for (const auto& v : r.table) {
    if (v.kind != kind) throw Error(Errc::kind_mismatch, "entry kind differs from repar kind");
    if (v.items.empty()) throw Error(Errc::invalid_value, "empty repar entry");
    for (uint32_t t : v.items)
      if (t >= r.cod.num_points()) throw Error(Errc::unknown_element, "repar target out of range");
    if (kind == MonadKind::interval) {
      if (v.items.size() != 2) throw Error(Errc::invalid_interval, "interval needs two endpoints");
      if (!r.cod.point_leq(v.items[0], v.items[1]))
        throw Error(Errc::invalid_interval, "interval endpoints out of order");
    }
    if (kind == MonadKind::distribution) {
      double mass = 0.0;
      for (double p : v.probs) {
        if (!(p >= 0.0)) throw Error(Errc::invalid_distribution, "negative probability");
        mass += p;
      }
      if (std::abs(mass - 1.0) > kTvTol)
        throw Error(Errc::invalid_distribution, "mass differs from 1 beyond tolerance");
    }
  }
  return r;
}

Repar identity_repar(MonadKind kind, const ParamSpace& s) {
  Repar r{kind, s, s, {}};
  r.table.reserve(s.num_points());
  for (size_t i = 0; i < s.num_points(); ++i)
    r.table.push_back(unit(kind, static_cast<uint32_t>(i)));
  return r;
}

Repar vcompose(const Repar& phi, const Repar& psi) {
  if (phi.kind != psi.kind) throw Error(Errc::kind_mismatch, "mixed monad kinds");
  if (!space_equal(phi.cod, psi.dom))
    throw Error(Errc::interface_mismatch, "cod of first repar differs from dom of second");
  Repar out{phi.kind, phi.dom, psi.cod, {}};
  out.table.reserve(phi.table.size());
  for (const auto& v : phi.table)
    out.table.push_back(bind_uncertain(v, [&](uint32_t b) { return psi.table[b]; }));
  return out;
}

bool check_2cell(const Repar& phi, const ParamCell& f, const ParamCell& g, double tol) {
  if (phi.kind != f.kind || f.kind != g.kind)
    throw Error(Errc::kind_mismatch, "mixed monad kinds");
  if (!space_equal(phi.dom, f.dom) || !space_equal(phi.cod, g.dom))
    throw Error(Errc::interface_mismatch, "repar endpoints differ from cell parameter spaces");
  if (!poset_equal(*f.src, *g.src) || !poset_equal(*f.tgt, *g.tgt))
    throw Error(Errc::interface_mismatch, "cells have different DP interfaces");
  for (size_t a = 0; a < f.table.size(); ++a) {
    auto composite = bind_uncertain(phi.table[a], [&](uint32_t b) { return g.table[b]; });
    if (!values_equal(f.table[a], composite, tol)) return false;
  }
  return true;
}

Repar hcompose_2cells(const Repar& phi1, const Repar& phi2) {
  if (phi1.kind != phi2.kind) throw Error(Errc::kind_mismatch, "mixed monad kinds");
  Repar out{phi1.kind, tensor(phi1.dom, phi2.dom), tensor(phi1.cod, phi2.cod), {}};
  const size_t n2 = phi2.cod.num_points();
  out.table.reserve(phi1.table.size() * phi2.table.size());
  for (const auto& a : phi1.table)
    for (const auto& b : phi2.table)
      out.table.push_back(map2_uncertain(a, b, [&](uint32_t x, uint32_t y) {
        return static_cast<uint32_t>(x * n2 + y);
      }));
  return out;
}

Repar tensorator(const ParamCell& f1, const ParamCell& f2, const ParamCell& g1,
                 const ParamCell& g2) {
  MonadKind kind = f1.kind;
  if (f2.kind != kind || g1.kind != kind || g2.kind != kind)
    throw Error(Errc::kind_mismatch, "mixed monad kinds");
  if (!poset_equal(*f1.tgt, *g1.src) || !poset_equal(*f2.tgt, *g2.src))
    throw Error(Errc::interface_mismatch, "cells do not form an interchange square");
  const ParamSpace &u1 = f1.dom, &u2 = f2.dom, &v1 = g1.dom, &v2 = g2.dom;
  ParamSpace dom = tensor(tensor(u1, u2), tensor(v1, v2));
  ParamSpace cod = tensor(tensor(u1, v1), tensor(u2, v2));
  const size_t nu1 = u1.num_points(), nu2 = u2.num_points();
  const size_t nv1 = v1.num_points(), nv2 = v2.num_points();
  Repar out{kind, std::move(dom), std::move(cod), {}};
  out.table.reserve(nu1 * nu2 * nv1 * nv2);
  for (size_t a = 0; a < nu1; ++a)
    for (size_t b = 0; b < nu2; ++b)
      for (size_t c = 0; c < nv1; ++c)
        for (size_t d = 0; d < nv2; ++d) {
          size_t target = ((a * nv1 + c) * nu2 + b) * nv2 + d;
          out.table.push_back(unit(kind, static_cast<uint32_t>(target)));
        }
  return out;
}

Repar swap_repar(MonadKind kind, const ParamSpace& a, const ParamSpace& b) {
  const size_t na = a.num_points(), nb = b.num_points();
  Repar out{kind, tensor(a, b), tensor(b, a), {}};
  out.table.reserve(na * nb);
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j)
      out.table.push_back(unit(kind, static_cast<uint32_t>(j * na + i)));
  return out;
}

ParamCell coherence_cell(MonadKind kind, Coherence which, const std::vector<Poset>& objects) {
  switch (which) {
    case Coherence::assoc: {
      if (objects.size() != 3) throw Error(Errc::shape_mismatch, "assoc takes three objects");
      return include(kind, identity_dp(product(product(objects[0], objects[1]), objects[2])));
    }
    case Coherence::lunit:
    case Coherence::runit: {
      if (objects.size() != 1) throw Error(Errc::shape_mismatch, "unitor takes one object");
      return include(kind, identity_dp(objects[0]));
    }
    case Coherence::sym: {
      if (objects.size() != 2) throw Error(Errc::shape_mismatch, "sym takes two objects");
      return include(kind, sym_dp(objects[0], objects[1]));
    }
  }
  throw Error(Errc::invalid_value, "unknown coherence cell");
}

ParamCell reparametrize(const ParamCell& cell, const Repar& phi) {
  if (phi.kind != cell.kind) throw Error(Errc::kind_mismatch, "mixed monad kinds");
  if (!space_equal(phi.cod, cell.dom))
    throw Error(Errc::interface_mismatch, "repar cod differs from cell parameter space");
  ParamCell out{cell.kind, phi.dom, cell.src, cell.tgt, {}};
  out.table.reserve(phi.table.size());
  for (const auto& v : phi.table)
    out.table.push_back(bind_uncertain(v, [&](uint32_t b) { return cell.table[b]; }));
  return out;
}

bool cells_equal(const ParamCell& a, const ParamCell& b, double tol) {
  if (a.kind != b.kind || !space_equal(a.dom, b.dom)) return false;
  if (!poset_equal(*a.src, *b.src) || !poset_equal(*a.tgt, *b.tgt)) return false;
  for (size_t i = 0; i < a.table.size(); ++i)
    if (!values_equal(a.table[i], b.table[i], tol)) return false;
  return true;
}

bool repars_equal(const Repar& a, const Repar& b, double tol) {
  if (a.kind != b.kind || !space_equal(a.dom, b.dom) || !space_equal(a.cod, b.cod)) return false;
  for (size_t i = 0; i < a.table.size(); ++i)
    if (!values_equal(a.table[i], b.table[i], tol)) return false;
  return true;
}

}  // namespace pudp

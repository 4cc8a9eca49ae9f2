#include "pudp/bundle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "pudp/formula.hpp"

namespace pudp {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(Errc::schema_error, path + ": " + msg);
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::string str_at(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool bool_at(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

double num_at(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Rat rat_at(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return rat_parse(j.get<std::string>());
    } catch (const Error&) {
      fail(path, "not a rational: \"" + j.get<std::string>() + "\"");
    }
  }
  fail(path, "expected a rational (number or \"p/q\" string)");
}

// A label atom: strings pass through, numbers canonicalize so they match the
// atoms grid_poset generates.
std::string atom_at(const Json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return rat_str(rat_at(j, path));
  fail(path, "expected a label atom (string or number)");
}

Label label_at(const Json& j, const std::string& path) {
  Label l;
  if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      l.push_back(atom_at(j[i], path + "/" + std::to_string(i)));
    return l;
  }
  l.push_back(atom_at(j, path));
  return l;
}

size_t element_index(const Poset& p, const Json& j, const std::string& path) {
  Label l = label_at(j, path);
  if (auto idx = p->index_of(l)) return *idx;
  throw Error(Errc::unknown_element, path + ": no element " + label_str(l));
}

// ---------------------------------------------------------------------------
// Posets.

struct PosetResolver {
  const Json* descs = nullptr;
  std::map<std::string, Poset> done;
  std::set<std::string> busy;

  Poset get(const std::string& name, const std::string& refpath) {
    auto hit = done.find(name);
    if (hit != done.end()) return hit->second;
    if (!descs || !descs->contains(name)) fail(refpath, "unknown poset \"" + name + "\"");
    if (!busy.insert(name).second) fail("/posets/" + name, "cyclic poset reference");
    Poset p = build(name, descs->at(name), "/posets/" + name);
    busy.erase(name);
    done.emplace(name, p);
    return p;
  }

  Poset build(const std::string& name, const Json& d, const std::string& path) {
    if (!d.is_object() || d.size() != 1)
      fail(path, "expected exactly one of chain/grid/product/explicit/op");
    if (d.contains("chain")) {
      const Json& a = d["chain"];
      if (!a.is_array() || a.empty()) fail(path + "/chain", "expected a nonempty array");
      std::vector<std::string> atoms;
      for (size_t i = 0; i < a.size(); ++i)
        atoms.push_back(atom_at(a[i], path + "/chain/" + std::to_string(i)));
      return chain(atoms, name);
    }
    if (d.contains("grid")) {
      const Json& a = d["grid"];
      if (!a.is_array() || a.empty()) fail(path + "/grid", "expected a nonempty axis array");
      std::vector<GridAxis> axes;
      for (size_t i = 0; i < a.size(); ++i) {
        std::string ap = path + "/grid/" + std::to_string(i);
        GridAxis ax;
        ax.name = str_at(member(a[i], "name", ap), ap + "/name");
        const Json& vals = member(a[i], "values", ap);
        if (!vals.is_array() || vals.empty()) fail(ap + "/values", "expected a nonempty array");
        for (size_t k = 0; k < vals.size(); ++k)
          ax.values.push_back(rat_at(vals[k], ap + "/values/" + std::to_string(k)));
        if (a[i].contains("ascending"))
          ax.ascending = bool_at(a[i]["ascending"], ap + "/ascending");
        axes.push_back(std::move(ax));
      }
      return grid_poset(axes);
    }
    if (d.contains("product")) {
      const Json& a = d["product"];
      if (!a.is_array()) fail(path + "/product", "expected an array of poset names");
      std::vector<Poset> fs;
      for (size_t i = 0; i < a.size(); ++i) {
        std::string ip = path + "/product/" + std::to_string(i);
        fs.push_back(get(str_at(a[i], ip), ip));
      }
      return product_all(fs);
    }
    if (d.contains("explicit")) {
      const Json& e = d["explicit"];
      const Json& els = member(e, "elements", path + "/explicit");
      if (!els.is_array() || els.empty())
        fail(path + "/explicit/elements", "expected a nonempty array");
      std::vector<std::string> atoms;
      for (size_t i = 0; i < els.size(); ++i)
        atoms.push_back(atom_at(els[i], path + "/explicit/elements/" + std::to_string(i)));
      std::vector<std::pair<std::string, std::string>> pairs;
      if (e.contains("leq_pairs")) {
        const Json& ps = e["leq_pairs"];
        if (!ps.is_array()) fail(path + "/explicit/leq_pairs", "expected an array of pairs");
        for (size_t i = 0; i < ps.size(); ++i) {
          std::string pp = path + "/explicit/leq_pairs/" + std::to_string(i);
          if (!ps[i].is_array() || ps[i].size() != 2) fail(pp, "expected [below, above]");
          pairs.emplace_back(atom_at(ps[i][0], pp + "/0"), atom_at(ps[i][1], pp + "/1"));
        }
      }
      return mk_poset(atoms, pairs);
    }
    if (d.contains("op")) return opposite(get(str_at(d["op"], path + "/op"), path + "/op"));
    fail(path, "unknown poset descriptor");
  }
};

// ---------------------------------------------------------------------------
// Formulas and threshold functions.

std::vector<FormulaPtr> formulas_at(const Json& j, const std::string& path) {
  std::vector<FormulaPtr> out;
  try {
    if (j.is_string()) {
      out.push_back(parse_formula(j.get<std::string>()));
      return out;
    }
    if (j.is_array() && !j.empty()) {
      for (const auto& e : j) {
        if (!e.is_string()) fail(path, "expected a formula string");
        out.push_back(parse_formula(e.get<std::string>()));
      }
      return out;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::syntax_error) fail(path, e.what());
    throw;
  }
  fail(path, "expected a formula string or a nonempty array of them");
}

// Bind the functionality coordinates to the fun grid's axis names, layered
// over any fixed outer bindings (parameter atoms).
ThresholdFn threshold_fn(std::vector<FormulaPtr> formulas, const Poset& fun_grid,
                         std::map<std::string, Rat> fixed) {
  std::vector<std::string> axis_names = fun_grid->factor_names();
  return [formulas = std::move(formulas), axis_names = std::move(axis_names),
          fixed = std::move(fixed)](const std::vector<Rat>& coords) {
    std::map<std::string, Rat> env(fixed);
    for (size_t i = 0; i < axis_names.size(); ++i) env[axis_names[i]] = coords[i];
    std::vector<Rat> out;
    out.reserve(formulas.size());
    for (const auto& f : formulas) out.push_back(eval_formula(*f, env));
    return out;
  };
}

// ---------------------------------------------------------------------------
// DPs.

DesignProblem build_dp(const Json& d, const std::string& path, PosetResolver& posets) {
  if (!d.is_object() || d.size() != 1) fail(path, "expected exactly one of matrix/threshold");
  if (d.contains("matrix")) {
    const Json& m = d["matrix"];
    std::string mp = path + "/matrix";
    Poset fun = posets.get(str_at(member(m, "fun", mp), mp + "/fun"), mp + "/fun");
    Poset res = posets.get(str_at(member(m, "res", mp), mp + "/res"), mp + "/res");
    const Json& rows = member(m, "rows", mp);
    if (!rows.is_array() || rows.size() != fun->size())
      fail(mp + "/rows", "expected one row per functionality element");
    std::vector<std::vector<bool>> bits;
    for (size_t f = 0; f < rows.size(); ++f) {
      std::string rp = mp + "/rows/" + std::to_string(f);
      if (!rows[f].is_array() || rows[f].size() != res->size())
        fail(rp, "expected one entry per resource element");
      std::vector<bool> row;
      for (size_t r = 0; r < rows[f].size(); ++r)
        row.push_back(bool_at(rows[f][r], rp + "/" + std::to_string(r)));
      bits.push_back(std::move(row));
    }
    try {
      return mk_dp(fun, res, bits);
    } catch (const Error& e) {
      throw Error(e.code(), mp + ": " + e.what());
    }
  }
  if (d.contains("threshold")) {
    const Json& t = d["threshold"];
    std::string tp = path + "/threshold";
    Poset fun =
        posets.get(str_at(member(t, "fun_grid", tp), tp + "/fun_grid"), tp + "/fun_grid");
    Poset res =
        posets.get(str_at(member(t, "res_grid", tp), tp + "/res_grid"), tp + "/res_grid");
    auto formulas = formulas_at(member(t, "formula", tp), tp + "/formula");
    try {
      return threshold_dp(fun, res, threshold_fn(std::move(formulas), fun, {}));
    } catch (const Error& e) {
      throw Error(e.code(), tp + ": " + e.what());
    }
  }
  fail(path, "unknown dp descriptor");
}

// ---------------------------------------------------------------------------
// Parameter spaces, cells, reparametrizations.

ParamSpace build_space(const Json& a, const std::string& path) {
  if (!a.is_array()) fail(path, "expected an array of factors");
  std::vector<ParamFactor> factors;
  for (size_t i = 0; i < a.size(); ++i) {
    std::string fp = path + "/" + std::to_string(i);
    ParamFactor f;
    f.name = str_at(member(a[i], "name", fp), fp + "/name");
    const Json& pts = member(a[i], "points", fp);
    if (!pts.is_array() || pts.empty()) fail(fp + "/points", "expected a nonempty array");
    for (size_t k = 0; k < pts.size(); ++k)
      f.points.push_back(atom_at(pts[k], fp + "/points/" + std::to_string(k)));
    if (a[i].contains("ordered") && bool_at(a[i]["ordered"], fp + "/ordered"))
      f.order = chain(f.points, f.name);
    factors.push_back(std::move(f));
  }
  try {
    return ParamSpace(std::move(factors));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

const DesignProblem& dp_ref(const Json& j, const std::string& path,
                            const std::map<std::string, DesignProblem>& dps) {
  std::string name = str_at(j, path);
  auto it = dps.find(name);
  if (it == dps.end()) fail(path, "unknown dp \"" + name + "\"");
  return it->second;
}

Uncertain<DesignProblem> payload_at(const Json& j, const std::string& path, MonadKind kind,
                                    const std::map<std::string, DesignProblem>& dps) {
  auto leq = [](const DesignProblem& a, const DesignProblem& b) { return leq_dp(a, b); };
  switch (kind) {
    case MonadKind::identity: return unit(kind, dp_ref(j, path, dps));
    case MonadKind::powerset: {
      if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of dp names");
      std::vector<DesignProblem> items;
      for (size_t i = 0; i < j.size(); ++i)
        items.push_back(dp_ref(j[i], path + "/" + std::to_string(i), dps));
      return make_powerset(std::move(items));
    }
    case MonadKind::interval:
      return make_interval(dp_ref(member(j, "lo", path), path + "/lo", dps),
                           dp_ref(member(j, "hi", path), path + "/hi", dps), leq);
    case MonadKind::distribution: {
      const Json& atoms = member(j, "atoms", path);
      if (!atoms.is_array() || atoms.empty())
        fail(path + "/atoms", "expected a nonempty array of [dp, prob] pairs");
      std::vector<DesignProblem> items;
      std::vector<double> probs;
      for (size_t i = 0; i < atoms.size(); ++i) {
        std::string ap = path + "/atoms/" + std::to_string(i);
        if (!atoms[i].is_array() || atoms[i].size() != 2) fail(ap, "expected [dp, prob]");
        items.push_back(dp_ref(atoms[i][0], ap + "/0", dps));
        probs.push_back(num_at(atoms[i][1], ap + "/1"));
      }
      return make_distribution(std::move(items), std::move(probs));
    }
  }
  fail(path, "unknown monad kind");
}

// Parameter atoms that parse as rationals become formula bindings.
std::map<std::string, Rat> point_bindings(const ParamSpace& space, size_t point) {
  std::map<std::string, Rat> env;
  auto coords = space.coords(point);
  for (size_t i = 0; i < space.num_factors(); ++i) {
    const auto& f = space.factor(i);
    try {
      env[f.name] = rat_parse(f.points[coords[i]]);
    } catch (const Error&) {
      // non-numeric atom: usable as a point, not in formulas
    }
  }
  return env;
}

ParamCell build_cell(const Json& d, const std::string& path, MonadKind kind,
                     PosetResolver& posets, const std::map<std::string, DesignProblem>& dps) {
  ParamSpace space = build_space(member(d, "param", path), path + "/param");
  std::vector<Uncertain<DesignProblem>> table;
  table.reserve(space.num_points());

  if (d.contains("table")) {
    const Json& t = d["table"];
    if (!t.is_object()) fail(path + "/table", "expected an object keyed by parameter point");
    for (size_t p = 0; p < space.num_points(); ++p) {
      std::string key = space.point_str(p);
      if (!t.contains(key)) fail(path + "/table", "missing point \"" + key + "\"");
      table.push_back(payload_at(t[key], path + "/table/" + key, kind, dps));
    }
    if (t.size() != space.num_points())
      fail(path + "/table", "table has entries outside the parameter space");
  } else if (d.contains("threshold_family")) {
    const Json& t = d["threshold_family"];
    std::string tp = path + "/threshold_family";
    Poset fun =
        posets.get(str_at(member(t, "fun_grid", tp), tp + "/fun_grid"), tp + "/fun_grid");
    Poset res =
        posets.get(str_at(member(t, "res_grid", tp), tp + "/res_grid"), tp + "/res_grid");
    auto leq = [](const DesignProblem& a, const DesignProblem& b) { return leq_dp(a, b); };
    auto build_one = [&](const Json& fj, const std::string& fp, size_t point) {
      auto fn = threshold_fn(formulas_at(fj, fp), fun, point_bindings(space, point));
      try {
        return threshold_dp(fun, res, fn);
      } catch (const Error& e) {
        throw Error(e.code(), fp + " at point \"" + space.point_str(point) + "\": " + e.what());
      }
    };
    for (size_t p = 0; p < space.num_points(); ++p) {
      switch (kind) {
        case MonadKind::identity:
          table.push_back(unit(kind, build_one(member(t, "formula", tp), tp + "/formula", p)));
          break;
        case MonadKind::interval:
          table.push_back(
              make_interval(build_one(member(t, "formula_lo", tp), tp + "/formula_lo", p),
                            build_one(member(t, "formula_hi", tp), tp + "/formula_hi", p),
                            leq));
          break;
        case MonadKind::powerset: {
          const Json& set = member(t, "formula_set", tp);
          if (!set.is_array() || set.empty())
            fail(tp + "/formula_set", "expected a nonempty array");
          std::vector<DesignProblem> items;
          for (size_t i = 0; i < set.size(); ++i)
            items.push_back(build_one(set[i], tp + "/formula_set/" + std::to_string(i), p));
          table.push_back(make_powerset(std::move(items)));
          break;
        }
        case MonadKind::distribution: {
          const Json& fs = member(t, "formulas", tp);
          if (!fs.is_array() || fs.empty())
            fail(tp + "/formulas", "expected a nonempty array of [formula, prob] pairs");
          std::vector<DesignProblem> items;
          std::vector<double> probs;
          for (size_t i = 0; i < fs.size(); ++i) {
            std::string fp = tp + "/formulas/" + std::to_string(i);
            if (!fs[i].is_array() || fs[i].size() != 2) fail(fp, "expected [formula, prob]");
            items.push_back(build_one(fs[i][0], fp + "/0", p));
            probs.push_back(num_at(fs[i][1], fp + "/1"));
          }
          table.push_back(make_distribution(std::move(items), std::move(probs)));
          break;
        }
      }
    }
  } else {
    fail(path, "expected \"table\" or \"threshold_family\"");
  }

  Poset src = table[0].items[0].fun, tgt = table[0].items[0].res;
  try {
    return make_cell(kind, std::move(space), src, tgt, std::move(table));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

Repar build_repar(const Json& d, const std::string& path, MonadKind kind) {
  ParamSpace dom = build_space(member(d, "dom", path), path + "/dom");
  ParamSpace cod = build_space(member(d, "cod", path), path + "/cod");
  std::map<std::string, uint32_t> cod_index;
  for (size_t p = 0; p < cod.num_points(); ++p)
    cod_index[cod.point_str(p)] = static_cast<uint32_t>(p);
  auto target = [&](const Json& j, const std::string& tp) {
    std::string key = str_at(j, tp);
    auto it = cod_index.find(key);
    if (it == cod_index.end()) fail(tp, "no codomain point \"" + key + "\"");
    return it->second;
  };

  const Json& t = member(d, "table", path);
  if (!t.is_object()) fail(path + "/table", "expected an object keyed by parameter point");
  std::vector<Uncertain<uint32_t>> table;
  for (size_t p = 0; p < dom.num_points(); ++p) {
    std::string key = dom.point_str(p);
    if (!t.contains(key)) fail(path + "/table", "missing point \"" + key + "\"");
    const Json& v = t[key];
    std::string vp = path + "/table/" + key;
    switch (kind) {
      case MonadKind::identity: table.push_back(unit(kind, target(v, vp))); break;
      case MonadKind::powerset: {
        if (!v.is_array() || v.empty()) fail(vp, "expected a nonempty array of points");
        std::vector<uint32_t> items;
        for (size_t i = 0; i < v.size(); ++i)
          items.push_back(target(v[i], vp + "/" + std::to_string(i)));
        table.push_back(make_powerset(std::move(items)));
        break;
      }
      case MonadKind::interval: {
        uint32_t lo = target(member(v, "lo", vp), vp + "/lo");
        uint32_t hi = target(member(v, "hi", vp), vp + "/hi");
        table.push_back(make_interval(lo, hi, [&](uint32_t a, uint32_t b) {
          return cod.point_leq(a, b);
        }));
        break;
      }
      case MonadKind::distribution: {
        const Json& atoms = member(v, "atoms", vp);
        if (!atoms.is_array() || atoms.empty())
          fail(vp + "/atoms", "expected a nonempty array of [point, prob] pairs");
        std::vector<uint32_t> items;
        std::vector<double> probs;
        for (size_t i = 0; i < atoms.size(); ++i) {
          std::string ap = vp + "/atoms/" + std::to_string(i);
          if (!atoms[i].is_array() || atoms[i].size() != 2) fail(ap, "expected [point, prob]");
          items.push_back(target(atoms[i][0], ap + "/0"));
          probs.push_back(num_at(atoms[i][1], ap + "/1"));
        }
        table.push_back(make_distribution(std::move(items), std::move(probs)));
        break;
      }
    }
  }
  try {
    return make_repar(kind, std::move(dom), std::move(cod), std::move(table));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Bundle parse_bundle(const Json& j) {
  if (!j.is_object()) fail("", "bundle must be a JSON object");
  static const std::set<std::string> allowed = {"monad", "posets",  "dps",    "cells",
                                                "repars", "diagram", "queries"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail("/" + it.key(), "unknown bundle field");

  Bundle b;
  std::string kname = str_at(member(j, "monad", ""), "/monad");
  auto kind = kind_from_name(kname);
  if (!kind) fail("/monad", "unknown monad kind \"" + kname + "\"");
  b.kind = *kind;

  PosetResolver posets;
  if (j.contains("posets")) {
    if (!j["posets"].is_object()) fail("/posets", "expected an object");
    posets.descs = &j["posets"];
    for (auto it = j["posets"].begin(); it != j["posets"].end(); ++it)
      posets.get(it.key(), "/posets/" + it.key());
  }

  if (j.contains("dps")) {
    if (!j["dps"].is_object()) fail("/dps", "expected an object");
    for (auto it = j["dps"].begin(); it != j["dps"].end(); ++it)
      b.dps.emplace(it.key(), build_dp(it.value(), "/dps/" + it.key(), posets));
  }

  if (j.contains("cells")) {
    if (!j["cells"].is_object()) fail("/cells", "expected an object");
    for (auto it = j["cells"].begin(); it != j["cells"].end(); ++it) {
      if (b.dps.count(it.key()))
        fail("/cells/" + it.key(), "name already used by a dp");
      b.cells.emplace(it.key(),
                      build_cell(it.value(), "/cells/" + it.key(), b.kind, posets, b.dps));
    }
  }

  if (j.contains("repars")) {
    if (!j["repars"].is_object()) fail("/repars", "expected an object");
    for (auto it = j["repars"].begin(); it != j["repars"].end(); ++it)
      b.repars.emplace(it.key(), build_repar(it.value(), "/repars/" + it.key(), b.kind));
  }

  if (j.contains("diagram")) b.diagram_text = str_at(j["diagram"], "/diagram");
  if (j.contains("queries")) {
    if (!j["queries"].is_array()) fail("/queries", "expected an array");
    b.requests = j["queries"];
  }
  b.posets = std::move(posets.done);
  return b;
}

Bundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::schema_error, "cannot open bundle file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(Errc::schema_error, path + ": " + e.what());
  }
  return parse_bundle(j);
}

DiagramEnv diagram_env(const Bundle& b) {
  DiagramEnv env;
  env.kind = b.kind;
  env.posets = b.posets;
  env.repars = b.repars;
  env.cells = b.cells;
  for (const auto& [name, dp] : b.dps) env.cells.emplace(name, include(b.kind, dp));
  return env;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

Json jnum(double v) { return Json(round12(v)); }

Json report_json(const LawReport& rep) {
  Json results = Json::array();
  for (const auto& r : rep.results) {
    Json e{{"name", r.name}, {"pass", r.pass}};
    if (!r.witness.empty()) e["witness"] = r.witness;
    results.push_back(std::move(e));
  }
  return results;
}

}  // namespace

Json run_check_laws(const LawOptions& opt, const Bundle* bundle) {
  Json results = Json::array();
  auto append = [&](const LawReport& rep) {
    for (auto& e : report_json(rep)) results.push_back(std::move(e));
  };

  append(dp_law_suite(opt));
  std::vector<MonadKind> kinds;
  if (bundle)
    kinds = {bundle->kind};
  else
    kinds = {MonadKind::identity, MonadKind::powerset, MonadKind::interval,
             MonadKind::distribution};
  for (MonadKind k : kinds) {
    append(monad_law_suite(k, opt));
    append(para_law_suite(k, opt));
  }

  if (bundle) {
    for (const auto& [name, dp] : bundle->dps) {
      bool ok = dp_equal(compose(identity_dp(dp.fun), dp), dp) &&
                dp_equal(compose(dp, identity_dp(dp.res)), dp);
      results.push_back(Json{{"name", "bundle dp \"" + name + "\": identities act trivially"},
                             {"pass", ok}});
    }
    for (const auto& [name, cell] : bundle->cells) {
      bool ok =
          cells_equal(hcompose(include(bundle->kind, identity_dp(cell.src)), cell), cell,
                      opt.tol) &&
          cells_equal(hcompose(cell, include(bundle->kind, identity_dp(cell.tgt))), cell,
                      opt.tol);
      results.push_back(Json{
          {"name", "bundle cell \"" + name + "\": unital against included identities"},
          {"pass", ok}});
    }
  }

  bool all = true;
  for (const auto& e : results)
    if (!e["pass"].get<bool>()) all = false;
  return Json{{"seed", opt.seed},
              {"samples", opt.samples},
              {"tolerance", jnum(opt.tol)},
              {"corrupt_interval_join", opt.corrupt_interval_join},
              {"results", results},
              {"all_pass", all}};
}

namespace {

Json poset_summary(const Poset& p) {
  Json factors = Json::array();
  for (const auto& n : p->factor_names()) factors.push_back(n);
  return Json{{"factors", factors}, {"elements", p->size()}};
}

Json space_summary(const ParamSpace& s) {
  Json factors = Json::array();
  for (const auto& f : s.factors()) {
    Json pts = Json::array();
    for (const auto& p : f.points) pts.push_back(p);
    factors.push_back(Json{{"name", f.name}, {"points", pts}, {"ordered", f.order != nullptr}});
  }
  return Json{{"factors", factors}, {"points", s.num_points()}};
}

size_t interval_width(const Uncertain<DesignProblem>& u) {
  size_t w = 0;
  for (size_t f = 0; f < u.items[0].rows.size(); ++f)
    w += u.items[1].rows[f].count() - u.items[0].rows[f].count();
  return w;
}

Json payload_summary(const ParamCell& cell) {
  Json s{{"kind", kind_name(cell.kind)}};
  if (cell.kind == MonadKind::interval) {
    size_t wmin = SIZE_MAX, wmax = 0;
    for (const auto& u : cell.table) {
      size_t w = interval_width(u);
      wmin = std::min(wmin, w);
      wmax = std::max(wmax, w);
    }
    s["width_min"] = wmin;
    s["width_max"] = wmax;
  } else {
    size_t smin = SIZE_MAX, smax = 0;
    for (const auto& u : cell.table) {
      smin = std::min(smin, u.items.size());
      smax = std::max(smax, u.items.size());
    }
    s["support_min"] = smin;
    s["support_max"] = smax;
  }
  return s;
}

}  // namespace

Json run_eval(const Bundle& b) {
  if (b.diagram_text.empty())
    throw Error(Errc::schema_error, "/diagram: bundle has no diagram");
  ExprPtr expr = parse_diagram(b.diagram_text);
  DiagramEnv env = diagram_env(b);
  ParamCell cell = eval_diagram(*expr, env);
  return Json{{"diagram", print_diagram(*expr)},
              {"kind", kind_name(b.kind)},
              {"parameters", space_summary(cell.dom)},
              {"src", poset_summary(cell.src)},
              {"tgt", poset_summary(cell.tgt)},
              {"payload", payload_summary(cell)}};
}

namespace {

Json antichain_json(const Antichain& a) {
  Json out = Json::array();
  for (size_t i : a.members) {
    Json coords = Json::array();
    for (const auto& atom : a.poset->label(i)) coords.push_back(atom);
    out.push_back(std::move(coords));
  }
  return out;
}

Json answer_json(const Uncertain<Antichain>& u) {
  switch (u.kind) {
    case MonadKind::identity: return Json{{"antichain", antichain_json(u.items[0])}};
    case MonadKind::powerset: {
      Json set = Json::array();
      for (const auto& a : u.items) set.push_back(antichain_json(a));
      return Json{{"set", set}};
    }
    case MonadKind::interval:
      return Json{{"best_case", antichain_json(u.items[0])},
                  {"worst_case", antichain_json(u.items[1])}};
    case MonadKind::distribution: {
      Json atoms = Json::array();
      for (size_t i = 0; i < u.items.size(); ++i)
        atoms.push_back(Json::array({antichain_json(u.items[i]), jnum(u.probs[i])}));
      return Json{{"atoms", atoms}};
    }
  }
  throw Error(Errc::kind_mismatch, "unknown monad kind");
}

struct TargetCache {
  std::optional<ParamCell> diagram;
  std::map<std::string, ParamCell> included;
};

const ParamCell& resolve_target(const Bundle& b, const Json& q, const std::string& path,
                                TargetCache& cache) {
  std::string t = "diagram";
  if (q.contains("target")) t = str_at(q["target"], path + "/target");
  if (t == "diagram") {
    if (!cache.diagram) {
      if (b.diagram_text.empty()) fail(path + "/target", "bundle has no diagram");
      DiagramEnv env = diagram_env(b);
      cache.diagram = eval_diagram(*parse_diagram(b.diagram_text), env);
    }
    return *cache.diagram;
  }
  if (auto it = b.cells.find(t); it != b.cells.end()) return it->second;
  if (auto it = b.dps.find(t); it != b.dps.end()) {
    auto hit = cache.included.find(t);
    if (hit == cache.included.end())
      hit = cache.included.emplace(t, include(b.kind, it->second)).first;
    return hit->second;
  }
  fail(path + "/target", "unknown target \"" + t + "\"");
}

std::string target_name(const Json& q) {
  return q.contains("target") && q["target"].is_string() ? q["target"].get<std::string>()
                                                         : std::string("diagram");
}

Json run_query_request(const Bundle& b, const Json& q, const std::string& path,
                       TargetCache& cache) {
  const ParamCell& cell = resolve_target(b, q, path, cache);
  Label fl = label_at(member(q, "f", path), path + "/f");
  size_t f = element_index(cell.src, member(q, "f", path), path + "/f");
  auto answers = query_cell(cell, f);
  Json rows = Json::array();
  for (size_t p = 0; p < answers.size(); ++p)
    rows.push_back(Json{{"point", cell.dom.point_str(p)}, {"answer", answer_json(answers[p])}});
  return Json{{"target", target_name(q)}, {"f", label_str(fl)}, {"answers", rows}};
}

Json run_decide_request(const Bundle& b, const Json& q, const std::string& path,
                        TargetCache& cache) {
  const ParamCell& cell = resolve_target(b, q, path, cache);
  Label fl = label_at(member(q, "f", path), path + "/f");
  size_t f = element_index(cell.src, member(q, "f", path), path + "/f");
  std::string uname = str_at(member(q, "utility", path), path + "/utility");
  auto utility = utility_from_name(uname);
  if (!utility) fail(path + "/utility", "unknown utility \"" + uname + "\"");
  Decision d = decide(cell, f, *utility);
  Json scores = Json::array();
  for (double s : d.scores) scores.push_back(std::isfinite(s) ? jnum(s) : Json());
  return Json{{"target", target_name(q)},
              {"f", label_str(fl)},
              {"utility", uname},
              {"point", cell.dom.point_str(d.point)},
              {"point_index", d.point},
              {"feasible", d.feasible},
              {"value", d.feasible ? jnum(d.value) : Json()},
              {"scores", scores}};
}

Json run_infer_request(const Bundle& b, const Json& q, const std::string& path,
                       TargetCache& cache) {
  const ParamCell& cell = resolve_target(b, q, path, cache);
  std::string fname = str_at(member(q, "factor", path), path + "/factor");
  size_t factor = SIZE_MAX;
  for (size_t i = 0; i < cell.dom.num_factors(); ++i)
    if (cell.dom.factor(i).name == fname) factor = i;
  if (factor == SIZE_MAX) fail(path + "/factor", "no parameter factor \"" + fname + "\"");

  const Json& pj = member(q, "prior", path);
  if (!pj.is_array()) fail(path + "/prior", "expected an array of probabilities");
  std::vector<double> prior;
  for (size_t i = 0; i < pj.size(); ++i)
    prior.push_back(num_at(pj[i], path + "/prior/" + std::to_string(i)));

  const Json& oj = member(q, "observations", path);
  if (!oj.is_array()) fail(path + "/observations", "expected an array");
  std::vector<Observation> obs;
  for (size_t i = 0; i < oj.size(); ++i) {
    std::string op = path + "/observations/" + std::to_string(i);
    Observation o;
    const Json& xj = member(oj[i], "x", op);
    for (size_t k = 0; k < cell.dom.num_factors(); ++k) {
      if (k == factor) continue;
      const auto& fac = cell.dom.factor(k);
      if (!xj.contains(fac.name)) fail(op + "/x", "missing factor \"" + fac.name + "\"");
      std::string atom = str_at(xj[fac.name], op + "/x/" + fac.name);
      auto pos = std::find(fac.points.begin(), fac.points.end(), atom);
      if (pos == fac.points.end())
        fail(op + "/x/" + fac.name, "no point \"" + atom + "\"");
      o.rest.push_back(static_cast<uint32_t>(pos - fac.points.begin()));
    }
    o.fun = element_index(cell.src, member(oj[i], "f", op), op + "/f");
    o.res = element_index(cell.tgt, member(oj[i], "r", op), op + "/r");
    o.feasible = oj[i].contains("feasible") ? bool_at(oj[i]["feasible"], op + "/feasible") : true;
    obs.push_back(std::move(o));
  }

  auto posterior = bayes_update(cell, factor, prior, obs);
  Json pts = Json::array(), post = Json::array();
  for (const auto& p : cell.dom.factor(factor).points) pts.push_back(p);
  for (double p : posterior) post.push_back(jnum(p));
  return Json{{"target", target_name(q)},
              {"factor", fname},
              {"points", pts},
              {"posterior", post}};
}

Json run_fit_request(const Json& q, const std::string& path) {
  const Json& fam = member(q, "family", path);
  std::string fp = path + "/family";
  auto formulas = formulas_at(member(fam, "formula", fp), fp + "/formula");
  auto names_of = [&](const char* key) {
    const Json& a = member(fam, key, fp);
    if (!a.is_array()) fail(fp + "/" + key, "expected an array of names");
    std::vector<std::string> out;
    for (size_t i = 0; i < a.size(); ++i)
      out.push_back(str_at(a[i], fp + "/" + key + "/" + std::to_string(i)));
    return out;
  };
  std::vector<std::string> theta_names = names_of("theta");
  std::vector<std::string> fun_names = names_of("fun");

  auto rats_at = [&](const Json& j, const std::string& p, size_t want) {
    std::vector<Rat> out;
    if (j.is_array()) {
      for (size_t i = 0; i < j.size(); ++i)
        out.push_back(rat_at(j[i], p + "/" + std::to_string(i)));
    } else {
      out.push_back(rat_at(j, p));
    }
    if (out.size() != want) fail(p, "expected " + std::to_string(want) + " coordinate(s)");
    return out;
  };

  const Json& cj = member(q, "candidates", path);
  if (!cj.is_array() || cj.empty()) fail(path + "/candidates", "expected a nonempty array");
  std::vector<std::vector<Rat>> candidates;
  for (size_t i = 0; i < cj.size(); ++i)
    candidates.push_back(
        rats_at(cj[i], path + "/candidates/" + std::to_string(i), theta_names.size()));

  const Json& dj = member(q, "data", path);
  if (!dj.is_array() || dj.empty()) fail(path + "/data", "expected a nonempty array");
  std::vector<std::vector<Rat>> funs, ress;
  for (size_t i = 0; i < dj.size(); ++i) {
    std::string dp = path + "/data/" + std::to_string(i);
    funs.push_back(rats_at(member(dj[i], "f", dp), dp + "/f", fun_names.size()));
    ress.push_back(rats_at(member(dj[i], "r", dp), dp + "/r", formulas.size()));
  }

  FitMode mode = FitMode::least_squares;
  if (q.contains("mode")) {
    std::string m = str_at(q["mode"], path + "/mode");
    if (m == "least_squares")
      mode = FitMode::least_squares;
    else if (m == "constrained")
      mode = FitMode::constrained;
    else
      fail(path + "/mode", "unknown mode \"" + m + "\"");
  }

  ThresholdFamily family = [&formulas, &theta_names, &fun_names](
                               const std::vector<Rat>& fun, const std::vector<Rat>& theta) {
    std::map<std::string, Rat> env;
    for (size_t i = 0; i < fun_names.size(); ++i) env[fun_names[i]] = fun[i];
    for (size_t i = 0; i < theta_names.size(); ++i) env[theta_names[i]] = theta[i];
    std::vector<Rat> out;
    out.reserve(formulas.size());
    for (const auto& f : formulas) out.push_back(eval_formula(*f, env));
    return out;
  };

  FitResult fr = fit_threshold(family, candidates, funs, ress, mode);
  Json theta = Json::array();
  for (const auto& v : candidates[fr.theta]) theta.push_back(rat_str(v));
  return Json{{"mode", mode == FitMode::least_squares ? "least_squares" : "constrained"},
              {"index", fr.theta},
              {"theta", theta},
              {"loss", rat_str(fr.loss)},
              {"loss_value", jnum(rat_to_double(fr.loss))}};
}

}  // namespace

Json run_requests(const Bundle& b, const std::string& want) {
  TargetCache cache;
  Json results = Json::array();
  for (size_t i = 0; i < b.requests.size(); ++i) {
    const Json& q = b.requests[i];
    std::string path = "/queries/" + std::to_string(i);
    std::string kind = str_at(member(q, "kind", path), path + "/kind");
    if (kind != "query" && kind != "decide" && kind != "infer" && kind != "fit")
      fail(path + "/kind", "unknown request kind \"" + kind + "\"");
    if (kind != want) continue;
    if (kind == "query")
      results.push_back(run_query_request(b, q, path, cache));
    else if (kind == "decide")
      results.push_back(run_decide_request(b, q, path, cache));
    else if (kind == "infer")
      results.push_back(run_infer_request(b, q, path, cache));
    else
      results.push_back(run_fit_request(q, path));
  }
  return Json{{"results", results}};
}

// ---------------------------------------------------------------------------
// Aligned-text rendering.

namespace {

std::string pad(std::string s, size_t w) {
  while (s.size() < w) s.push_back(' ');
  return s;
}

std::string antichain_text(const Json& a) {
  std::string out = "{";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += ", ";
    const Json& coords = a[i];
    if (coords.size() == 1) {
      out += coords[0].get<std::string>();
    } else {
      out += "(";
      for (size_t k = 0; k < coords.size(); ++k) {
        if (k) out += ",";
        out += coords[k].get<std::string>();
      }
      out += ")";
    }
  }
  return out + "}";
}

// Distribution rows print by descending mass, index breaking ties.
std::vector<size_t> mass_order(const Json& atoms) {
  std::vector<size_t> order(atoms.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return atoms[x][1].get<double>() > atoms[y][1].get<double>();
  });
  return order;
}

std::string answer_text(const Json& a) {
  if (a.contains("antichain")) return antichain_text(a["antichain"]);
  if (a.contains("set")) {
    std::string out = "{ ";
    for (size_t i = 0; i < a["set"].size(); ++i) {
      if (i) out += "  ";
      out += antichain_text(a["set"][i]);
    }
    return out + " }";
  }
  if (a.contains("best_case"))
    return "best " + antichain_text(a["best_case"]) + "  worst " +
           antichain_text(a["worst_case"]);
  std::string out;
  for (size_t i : mass_order(a["atoms"])) {
    if (!out.empty()) out += "  ";
    out += antichain_text(a["atoms"][i][0]) + ": " + fmt_double(a["atoms"][i][1].get<double>());
  }
  return out;
}

}  // namespace

std::string render_check_laws(const Json& out) {
  std::ostringstream os;
  size_t failed = 0;
  for (const auto& r : out["results"]) {
    bool pass = r["pass"].get<bool>();
    if (!pass) ++failed;
    os << (pass ? "[PASS] " : "[FAIL] ") << r["name"].get<std::string>();
    if (r.contains("witness")) os << "  -- " << r["witness"].get<std::string>();
    os << "\n";
  }
  size_t total = out["results"].size();
  os << (total - failed) << "/" << total << " laws hold (seed "
     << out["seed"].get<uint64_t>() << ", " << out["samples"].get<int>() << " samples)\n";
  return os.str();
}

std::string render_eval(const Json& out) {
  std::ostringstream os;
  os << "diagram     " << out["diagram"].get<std::string>() << "\n";
  os << "kind        " << out["kind"].get<std::string>() << "\n";
  const Json& ps = out["parameters"];
  os << "parameters  " << ps["points"].get<size_t>() << " point(s)";
  if (!ps["factors"].empty()) {
    os << " over";
    for (const auto& f : ps["factors"]) {
      os << " " << f["name"].get<std::string>() << "(" << f["points"].size() << ")";
    }
  }
  os << "\n";
  auto iface = [&](const char* tag, const Json& p) {
    os << tag << p["elements"].get<size_t>() << " element(s)";
    if (!p["factors"].empty()) {
      os << ", factors";
      for (const auto& n : p["factors"]) os << " " << n.get<std::string>();
    }
    os << "\n";
  };
  iface("src         ", out["src"]);
  iface("tgt         ", out["tgt"]);
  const Json& pl = out["payload"];
  os << "payload     " << pl["kind"].get<std::string>();
  if (pl.contains("width_min"))
    os << ", width " << pl["width_min"].get<size_t>() << ".." << pl["width_max"].get<size_t>();
  else
    os << ", support " << pl["support_min"].get<size_t>() << ".."
       << pl["support_max"].get<size_t>();
  os << "\n";
  return os.str();
}

std::string render_requests(const Json& out, const std::string& want) {
  std::ostringstream os;
  bool first = true;
  for (const auto& r : out["results"]) {
    if (!first) os << "\n";
    first = false;
    if (want == "query") {
      os << "query target=" << r["target"].get<std::string>() << " f="
         << r["f"].get<std::string>() << "\n";
      size_t w = 5;
      for (const auto& row : r["answers"])
        w = std::max(w, row["point"].get<std::string>().size());
      for (const auto& row : r["answers"]) {
        std::string p = row["point"].get<std::string>();
        os << "  " << pad(p.empty() ? "()" : p, w) << "  " << answer_text(row["answer"])
           << "\n";
      }
    } else if (want == "decide") {
      os << "decide target=" << r["target"].get<std::string>() << " f="
         << r["f"].get<std::string>() << " utility=" << r["utility"].get<std::string>()
         << "\n";
      const Json& scores = r["scores"];
      for (size_t i = 0; i < scores.size(); ++i) {
        os << "  " << (i == r["point_index"].get<size_t>() ? "> " : "  ")
           << pad(std::to_string(i), 4)
           << (scores[i].is_null() ? "infeasible" : fmt_double(scores[i].get<double>()))
           << "\n";
      }
      if (r["feasible"].get<bool>())
        os << "  chosen point " << r["point_index"].get<size_t>() << " (\""
           << r["point"].get<std::string>() << "\") value "
           << fmt_double(r["value"].get<double>()) << "\n";
      else
        os << "  no feasible point\n";
    } else if (want == "infer") {
      os << "infer target=" << r["target"].get<std::string>() << " factor="
         << r["factor"].get<std::string>() << "\n";
      const Json& pts = r["points"];
      const Json& post = r["posterior"];
      std::vector<size_t> order(pts.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return post[x].get<double>() > post[y].get<double>();
      });
      size_t w = 1;
      for (const auto& p : pts) w = std::max(w, p.get<std::string>().size());
      for (size_t i : order)
        os << "  " << pad(pts[i].get<std::string>(), w) << "  "
           << fmt_double(post[i].get<double>()) << "\n";
    } else {
      os << "fit mode=" << r["mode"].get<std::string>() << "\n";
      std::string theta;
      for (const auto& t : r["theta"]) {
        if (!theta.empty()) theta += ",";
        theta += t.get<std::string>();
      }
      os << "  theta (" << theta << ")  index " << r["index"].get<size_t>() << "  loss "
         << r["loss"].get<std::string>() << " = "
         << fmt_double(r["loss_value"].get<double>()) << "\n";
    }
  }
  if (first) os << "no " << want << " requests in the bundle\n";
  return os.str();
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pudp

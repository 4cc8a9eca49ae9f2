#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pudp/bundle.hpp"
#include "pudp/formula.hpp"

namespace py = pybind11;
using namespace pudp;

namespace {

// Python-facing handle; the underlying poset is immutable and shared.
struct PyPoset {
  Poset p;
};

Rat rat_from_py(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return rat_parse(h.cast<std::string>());
  if (py::isinstance<py::int_>(h)) return Rat(h.cast<long long>());
  return rat_from_double(h.cast<double>());
}

DesignProblem threshold_from_formulas(const PyPoset& fun, const PyPoset& res,
                                      const std::vector<std::string>& formulas) {
  std::vector<FormulaPtr> parsed;
  parsed.reserve(formulas.size());
  for (const auto& f : formulas) parsed.push_back(parse_formula(f));
  const auto names = fun.p->factor_names();
  return threshold_dp(fun.p, res.p, [parsed, names](const std::vector<Rat>& coords) {
    std::map<std::string, Rat> env;
    for (size_t i = 0; i < names.size(); ++i) env[names[i]] = coords[i];
    std::vector<Rat> out;
    out.reserve(parsed.size());
    for (const auto& f : parsed) out.push_back(eval_formula(*f, env));
    return out;
  });
}

Bundle bundle_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::schema_error, e.what());
  }
  return parse_bundle(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "monotone co-design problems: posets, feasibility relations, "
            "uncertainty monads, wiring diagrams";

  py::register_exception<Error>(m, "CodesignError");

  py::class_<PyPoset>(m, "Poset")
      .def("__len__", [](const PyPoset& s) { return s.p->size(); })
      .def("arity", [](const PyPoset& s) { return s.p->arity(); })
      .def("labels",
           [](const PyPoset& s) {
             std::vector<Label> out(s.p->labels().begin(), s.p->labels().end());
             return out;
           })
      .def("factor_names", [](const PyPoset& s) { return s.p->factor_names(); })
      .def("leq", [](const PyPoset& s, size_t a, size_t b) { return s.p->leq(a, b); })
      .def("index_of",
           [](const PyPoset& s, const Label& l) -> py::object {
             if (auto i = s.p->index_of(l)) return py::cast(*i);
             return py::none();
           })
      .def("__repr__", [](const PyPoset& s) {
        return "<Poset of " + std::to_string(s.p->size()) + " element(s)>";
      });

  m.def(
      "chain",
      [](const std::vector<std::string>& atoms, const std::string& name) {
        return PyPoset{chain(atoms, name)};
      },
      py::arg("atoms"), py::arg("name") = "");
  m.def(
      "grid",
      [](const std::vector<std::pair<std::string, std::vector<py::object>>>& axes) {
        std::vector<GridAxis> gs;
        for (const auto& [name, vals] : axes) {
          GridAxis ax;
          ax.name = name;
          for (const auto& v : vals) ax.values.push_back(rat_from_py(v));
          gs.push_back(std::move(ax));
        }
        return PyPoset{grid_poset(gs)};
      },
      py::arg("axes"), "grid poset from [(axis_name, [values...]), ...]");
  m.def("product",
        [](const PyPoset& a, const PyPoset& b) { return PyPoset{product(a.p, b.p)}; });
  m.def("opposite", [](const PyPoset& p) { return PyPoset{opposite(p.p)}; });
  m.def("unit_poset", [] { return PyPoset{unit_poset()}; });
  m.def("poset_equal",
        [](const PyPoset& a, const PyPoset& b) { return poset_equal(*a.p, *b.p); });

  py::class_<DesignProblem>(m, "DesignProblem")
      .def_property_readonly("fun", [](const DesignProblem& d) { return PyPoset{d.fun}; })
      .def_property_readonly("res", [](const DesignProblem& d) { return PyPoset{d.res}; })
      .def("feas", &DesignProblem::feas, py::arg("f"), py::arg("r"))
      .def("__repr__", [](const DesignProblem& d) {
        return "<DesignProblem " + std::to_string(d.fun->size()) + "x" +
               std::to_string(d.res->size()) + ">";
      });

  m.def(
      "mk_dp",
      [](const PyPoset& fun, const PyPoset& res, const std::vector<std::vector<bool>>& rows) {
        return mk_dp(fun.p, res.p, rows);
      },
      py::arg("fun"), py::arg("res"), py::arg("rows"));
  m.def(
      "threshold_dp",
      [](const PyPoset& fun, const PyPoset& res, const py::object& formula) {
        std::vector<std::string> fs;
        if (py::isinstance<py::str>(formula))
          fs.push_back(formula.cast<std::string>());
        else
          fs = formula.cast<std::vector<std::string>>();
        return threshold_from_formulas(fun, res, fs);
      },
      py::arg("fun_grid"), py::arg("res_grid"), py::arg("formula"),
      "feasible iff every formula value is <= the matching resource coordinate");
  m.def("identity_dp", [](const PyPoset& p) { return identity_dp(p.p); });
  m.def("cap", [](const PyPoset& p) { return cap(p.p); });
  m.def("cup", [](const PyPoset& p) { return cup(p.p); });
  m.def("sym_dp", [](const PyPoset& p, const PyPoset& q) { return sym_dp(p.p, q.p); });
  m.def("compose", [](const DesignProblem& a, const DesignProblem& b) { return compose(a, b); });
  m.def("tensor", [](const DesignProblem& a, const DesignProblem& b) { return tensor(a, b); });
  m.def("dp_equal", &dp_equal);
  m.def("leq_dp", &leq_dp);

  m.def(
      "fix_fun_min_res",
      [](const DesignProblem& d, size_t f) {
        Antichain a = fix_fun_min_res(d, f);
        std::vector<Label> out;
        for (size_t i : a.members) out.push_back(a.poset->label(i));
        return out;
      },
      py::arg("dp"), py::arg("f"), "labels of the minimal feasible resources");
  m.def(
      "min_cost",
      [](const DesignProblem& d, size_t f) -> py::object {
        if (auto c = min_cost(d, f)) return py::cast(rat_to_double(*c));
        return py::none();
      },
      py::arg("dp"), py::arg("f"));

  m.def(
      "check_laws",
      [](uint64_t seed, int samples, double tolerance, bool corrupt_interval_join) {
        LawOptions opt{seed, samples, tolerance, corrupt_interval_join};
        return dump_json(run_check_laws(opt, nullptr));
      },
      py::arg("seed") = 0, py::arg("samples") = 200, py::arg("tolerance") = 1e-9,
      py::arg("corrupt_interval_join") = false, "JSON law report over all four kinds");

  m.def(
      "bundle_eval",
      [](const std::string& text) { return dump_json(run_eval(bundle_from_text(text))); },
      py::arg("bundle_json"), "typecheck + evaluate the bundle's diagram; JSON summary");
  m.def(
      "bundle_run",
      [](const std::string& text, const std::string& want) {
        if (want != "query" && want != "decide" && want != "infer" && want != "fit")
          throw Error(Errc::invalid_value, "unknown request kind \"" + want + "\"");
        return dump_json(run_requests(bundle_from_text(text), want));
      },
      py::arg("bundle_json"), py::arg("kind"),
      "run the bundle's query/decide/infer/fit requests; JSON results");

  m.def(
      "diagram_canonical",
      [](const std::string& text) { return print_diagram(*parse_diagram(text)); },
      py::arg("text"), "parse a wiring expression and print its canonical form");
}

#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "pudp/diagram.hpp"
#include "pudp/lawcheck.hpp"
#include "pudp/query.hpp"

namespace pudp {

using Json = nlohmann::json;

// One self-contained problem: named objects, one uncertainty kind, an
// optional wiring diagram and a list of requests.
struct Bundle {
  MonadKind kind = MonadKind::identity;
  std::map<std::string, Poset> posets;
  std::map<std::string, DesignProblem> dps;
  std::map<std::string, ParamCell> cells;
  std::map<std::string, Repar> repars;
  std::string diagram_text;  // empty: no diagram
  Json requests = Json::array();
};

// Schema errors carry a JSON-pointer-style path to the offending field.
Bundle parse_bundle(const Json& j);
Bundle load_bundle(const std::string& path);

// Named cells plus every named DP included at the bundle's kind.
DiagramEnv diagram_env(const Bundle& b);

// %.12g, parsed back so the JSON value itself is already rounded.
double round12(double v);
std::string fmt_double(double v);

Json run_check_laws(const LawOptions& opt, const Bundle* bundle);
Json run_eval(const Bundle& b);
// want is one of "query" | "decide" | "infer" | "fit"; runs the bundle's
// requests of that kind, in order.
Json run_requests(const Bundle& b, const std::string& want);

std::string render_check_laws(const Json& out);
std::string render_eval(const Json& out);
std::string render_requests(const Json& out, const std::string& want);

std::string dump_json(const Json& j);  // stable 2-space dump, trailing newline

}  // namespace pudp

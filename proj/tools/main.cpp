#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "pudp/bundle.hpp"

using namespace pudp;

namespace {

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monotone co-design problems: law checks, diagram evaluation, queries"};
  app.require_subcommand(1);

  std::string bundle_path, out_path, format = "json";
  uint64_t seed = 0;
  int samples = 200;
  double tolerance = 1e-9;
  bool corrupt = false;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the primary output to this file");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
  };

  auto* claws = app.add_subcommand("check-laws", "run the algebraic law suites");
  claws->add_option("bundle", bundle_path,
                    "optional bundle: restrict suites to its kind and check its objects");
  claws->add_option("--seed", seed, "RNG seed for the sampled laws");
  claws->add_option("--samples", samples, "instances per sampled law")
      ->check(CLI::PositiveNumber);
  claws->add_option("--tolerance", tolerance, "total-variation tolerance");
  claws->add_flag("--corrupt-interval-join", corrupt,
                  "inject a faulty interval join; associativity must then fail");
  add_io(claws);

  auto* ev = app.add_subcommand("eval", "typecheck and evaluate the bundle's diagram");
  ev->add_option("bundle", bundle_path, "problem bundle (JSON)")->required();
  add_io(ev);

  std::map<std::string, CLI::App*> reqs;
  for (const char* name : {"query", "decide", "infer", "fit"}) {
    auto* cmd = app.add_subcommand(
        name, std::string("run the bundle's ") + name + " requests");
    cmd->add_option("bundle", bundle_path, "problem bundle (JSON)")->required();
    add_io(cmd);
    reqs[name] = cmd;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Json output;
    std::string table;
    int rc = 0;
    if (claws->parsed()) {
      LawOptions opt{seed, samples, tolerance, corrupt};
      std::optional<Bundle> b;
      if (!bundle_path.empty()) b = load_bundle(bundle_path);
      output = run_check_laws(opt, b ? &*b : nullptr);
      rc = output["all_pass"].get<bool>() ? 0 : 1;
      table = render_check_laws(output);
    } else if (ev->parsed()) {
      output = run_eval(load_bundle(bundle_path));
      table = render_eval(output);
    } else {
      for (const auto& [name, cmd] : reqs) {
        if (!cmd->parsed()) continue;
        output = run_requests(load_bundle(bundle_path), name);
        table = render_requests(output, name);
      }
    }
    int io = emit(format == "json" ? dump_json(output) : table, out_path);
    return io != 0 ? io : rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include "gnet/cli.hpp"

#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "gnet/analysis.hpp"
#include "gnet/error.hpp"
#include "gnet/exprdsl.hpp"
#include "gnet/io.hpp"
#include "gnet/prodexport.hpp"
#include "gnet/sim.hpp"

namespace gnet {

namespace {

struct Loaded {
  Registry registry;
  ServiceFile file;
};

Loaded load(const std::string& model_path, const CliConfig& cfg) {
  Loaded l;
  if (!cfg.registry_path.empty()) l.registry = load_registry(cfg.registry_path);
  l.file = load_service(model_path);
  register_all(l.registry, l.file);
  return l;
}

std::vector<Value> parse_args(const std::string& text) {
  std::vector<Value> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  for (const auto& e : parse_inscription("[" + text + "]")) out.push_back(eval(e, {}));
  return out;
}

std::string resolve_method(const WebService& ws, const std::string& requested) {
  if (!requested.empty()) return requested;
  const MethodSpec* m = main_method(ws);
  if (!m) throw Error(Errc::UnknownMethod, ws.name + " declares no method");
  return m->name;
}

int emit(const std::string& text, const CliConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_file(cfg.out, text);
  }
  return kExitOk;
}

/// Loading problems are input errors; anything raised afterwards is a
/// semantic failure unless it is plain I/O.
template <typename Work>
int run_command(const std::string& path, const CliConfig& cfg, std::ostream& err, Work&& work) {
  Loaded loaded;
  try {
    loaded = load(path, cfg);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
  try {
    return work(loaded);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == Errc::Io ? kExitInput : kExitSemantic;
  }
}

bool require_valid(const WebService& ws, std::ostream& err) {
  ValidationReport r = validate(ws);
  if (r.ok()) return true;
  err << r.render();
  return false;
}

}  // namespace

int cmd_validate(const std::string& model_path, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_command(model_path, cfg, err, [&](Loaded& l) {
    ValidationReport r = validate(l.file.service);
    if (r.ok()) {
      out << "ok\n";
      return int{kExitOk};
    }
    out << r.render();
    return int{kExitSemantic};
  });
}

int cmd_compose(const std::string& expr_path, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  Registry reg;
  std::string text;
  try {
    if (!cfg.registry_path.empty()) reg = load_registry(cfg.registry_path);
    text = read_file(expr_path);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
  try {
    std::vector<WebService> derived;
    WebService ws = eval_expr(parse_expr(text), reg, derived);
    std::erase_if(derived, [&](const WebService& d) { return d.name == ws.name; });
    if (cfg.out.empty()) {
      out << dump_service({ws, derived});
    } else {
      write_file(cfg.out, dump_service({ws, derived}));
      out << ws.name << " (" << ws.net.is.places.size() << ", " << ws.net.is.transitions.size() << ", "
          << ws.net.is.arcs.size() << ")\n";
    }
    return int{kExitOk};
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == Errc::Io ? int{kExitInput} : int{kExitSemantic};
  }
}

int cmd_simulate(const std::string& model_path, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_command(model_path, cfg, err, [&](Loaded& l) {
    const WebService& ws = l.file.service;
    if (!require_valid(ws, err)) return int{kExitInput};
    std::string method = resolve_method(ws, cfg.method);
    SimState state = init_state(std::make_shared<const WebService>(ws), method, parse_args(cfg.args));
    SimContext ctx{&l.registry, cfg.depth_limit, cfg.max_steps};
    Policy policy = cfg.random_policy ? Policy::random(cfg.seed) : Policy::deterministic();
    RunResult r = run(std::move(state), policy, ctx);
    out << "outcome: " << to_string(r.outcome) << "\n";
    out << "steps: " << r.state.steps << "\n";
    out << render_trace(r.state.trace);
    if (!cfg.out.empty()) write_file(cfg.out, trace_json(r.state.trace));
    switch (r.outcome) {
      case Outcome::Goal: return int{kExitOk};
      case Outcome::Deadlock: return int{kExitSemantic};
      case Outcome::StepLimit: return int{kExitStepLimit};
    }
    return int{kExitSemantic};
  });
}

int cmd_analyze(const std::string& model_path, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_command(model_path, cfg, err, [&](Loaded& l) {
    const WebService& ws = l.file.service;
    if (!require_valid(ws, err)) return int{kExitInput};
    std::string method = resolve_method(ws, cfg.method);
    WebService inlined = inline_isps(ws, l.registry, cfg.depth_limit);
    FlatNet flat = flatten(inlined, method, parse_args(cfg.args));
    Limits limits;
    limits.max_states = cfg.max_states;
    StateGraph g = reachability(flat, limits);
    AnalysisReport report = analyze(g, flat_goal_places(inlined, method));
    std::string text = report.render(g);
    out << text;
    if (!cfg.out.empty()) write_file(cfg.out, text);
    if (report.truncated) return int{kExitTruncated};
    return report.ok() ? int{kExitOk} : int{kExitSemantic};
  });
}

int cmd_export(const std::string& model_path, const std::string& format, const CliConfig& cfg,
               std::ostream& out, std::ostream& err) {
  if (format != "prod" && format != "dot") {
    err << "unknown format " << format << "\n";
    return kExitInput;
  }
  return run_command(model_path, cfg, err, [&](Loaded& l) {
    const WebService& ws = l.file.service;
    if (!require_valid(ws, err)) return int{kExitInput};
    if (format == "dot") return emit(export_dot(ws), cfg, out);
    WebService inlined = inline_isps(ws, l.registry, cfg.depth_limit);
    FlatNet flat = cfg.args.empty() ? flatten(inlined)
                                    : flatten(inlined, resolve_method(ws, cfg.method), parse_args(cfg.args));
    return emit(export_prod(flat), cfg, out);
  });
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"G-Net service composition, simulation and verification"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  std::string policy = "det";
  app.add_option("--registry", cfg.registry_path, "directory of service and block JSON files")
      ->envname("GNET_REGISTRY");
  app.add_option("--depth-limit", cfg.depth_limit, "maximum invocation / inlining depth")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-states", cfg.max_states, "reachability state bound")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", cfg.max_steps, "simulation step bound")->check(CLI::PositiveNumber);
  app.add_option("--policy", policy, "firing choice")->check(CLI::IsMember({"det", "random"}));
  app.add_option("--seed", cfg.seed, "seed of the random policy");
  app.add_option("--out", cfg.out, "output file");
  app.add_option("--method", cfg.method, "method to run (main method by default)");
  app.add_option("--args", cfg.args, "comma-separated method arguments");

  std::string path;
  std::string format;
  auto* validate_cmd = app.add_subcommand("validate", "check a service file against the meta-model");
  validate_cmd->add_option("model", path)->required();
  auto* compose_cmd = app.add_subcommand("compose", "evaluate a composition expression file");
  compose_cmd->add_option("expr", path)->required();
  auto* simulate_cmd = app.add_subcommand("simulate", "play the token game of a method");
  simulate_cmd->add_option("model", path)->required();
  auto* analyze_cmd = app.add_subcommand("analyze", "flatten and explore the reachability graph");
  analyze_cmd->add_option("model", path)->required();
  auto* export_cmd = app.add_subcommand("export", "render PROD or dot text");
  export_cmd->add_option("model", path)->required();
  export_cmd->add_option("--format", format, "prod or dot")->required();

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? int{kExitOk} : int{kExitInput};
  }
  cfg.random_policy = policy == "random";

  if (validate_cmd->parsed()) return cmd_validate(path, cfg, out, err);
  if (compose_cmd->parsed()) return cmd_compose(path, cfg, out, err);
  if (simulate_cmd->parsed()) return cmd_simulate(path, cfg, out, err);
  if (analyze_cmd->parsed()) return cmd_analyze(path, cfg, out, err);
  return cmd_export(path, format, cfg, out, err);
}

}  // namespace gnet

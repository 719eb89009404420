#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gnet {

enum ExitCode : int {
  kExitOk = 0,
  kExitSemantic = 1,
  kExitInput = 2,
  kExitStepLimit = 3,
  kExitTruncated = 4,
};

struct CliConfig {
  std::string registry_path;
  std::size_t depth_limit = 16;
  std::size_t max_states = 100000;
  std::size_t max_steps = 10000;
  bool random_policy = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string method;
  /// Comma-separated literals, e.g. `1, true, "x"`.
  std::string args;
};

int cmd_validate(const std::string& model_path, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compose(const std::string& expr_path, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& model_path, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_analyze(const std::string& model_path, const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_export(const std::string& model_path, const std::string& format, const CliConfig& cfg,
               std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches; returns the process exit code.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace gnet

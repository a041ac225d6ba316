#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fpsd {

inline constexpr int kSchemaVersion = 1;

// One CLI invocation after flag parsing. Budgets left unset take the
// documented defaults and are echoed into the report either way.
struct CommandRequest {
  std::string verb;
  std::string subcommand;  // regularity only
  std::vector<std::string> args;
  int vars = 1;
  std::optional<int> trunc, pole_bound, zeta_bound, pmax, smax, steps;
  std::optional<std::string> schedule, module, element, f;
  std::vector<std::string> elements, coeffs;
  bool oracle = false;
  bool machine = false;
};

struct CommandResult {
  int exit_code = 0;  // 0 success, 2 certified negative, 1 error
  std::string output;
  std::string error_code;  // empty on success
};

CommandResult run_command(const CommandRequest& req);

std::vector<std::string> command_verbs();

}  // namespace fpsd

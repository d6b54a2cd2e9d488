#pragma once

#include <optional>
#include <span>
#include <string>

#include "flagexp/cli.hpp"

namespace flagexp::cli {

// Either a request or the help text that --help asked for.
struct ParseOutcome {
  std::optional<CommandRequest> request;
  std::string help;
};
ParseOutcome parse_or_help(std::span<const std::string> args);

}  // namespace flagexp::cli

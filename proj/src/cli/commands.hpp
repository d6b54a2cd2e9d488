#pragma once

#include "flagexp/cli.hpp"
#include "output.hpp"

namespace flagexp::cli {

struct CommandResult {
  Output output;
  Format format = Format::Json;
};

// Throws UsageError for bad flag values and flagexp::Error from the computation.
CommandResult execute(const CommandRequest& request);

}  // namespace flagexp::cli

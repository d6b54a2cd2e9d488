#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagexp::cli {

// Bad flag, missing flag or malformed value; run() maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One invocation: "group command" plus the flags that were given, as raw strings.
struct CommandRequest {
  std::string group;
  std::string command;
  std::map<std::string, std::string> options;  // "--space" -> "projective:3"

  friend bool operator==(const CommandRequest&, const CommandRequest&) = default;
};

struct CommandInfo {
  std::string group;
  std::string command;
  std::string summary;
  std::vector<std::string> flags;
};
const std::vector<CommandInfo>& commands();

// Throws UsageError naming the offending flag. args excludes the program name.
CommandRequest parse_request(std::span<const std::string> args);
// Arguments that parse back to the same request.
std::vector<std::string> print_request(const CommandRequest& request);

// Exit codes: 0 success, 1 computation error, 2 usage error, 3 enumeration budget exhausted.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace flagexp::cli

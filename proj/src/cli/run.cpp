#include <ostream>

#include "commands.hpp"
#include "flagexp/error.hpp"
#include "flagexp/spacespec.hpp"
#include "request_internal.hpp"

namespace flagexp::cli {

namespace {

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax:
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidFlagData:
    case ErrorCode::UnsupportedFamily:
    case ErrorCode::RankTooLarge:
    case ErrorCode::NotAWeight:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    const auto parsed = parse_or_help(args);
    if (!parsed.request) {
      out << parsed.help;
      return 0;
    }
    const auto result = execute(*parsed.request);
    render(out, result.output, result.format);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (is_input_error(e.code())) {
      err << "usage error: " << e.what() << "\n";
      if (e.code() != ErrorCode::Syntax) err << "space grammar: " << kSpaceGrammar << "\n";
      return 2;
    }
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::EnumerationBudgetExceeded ? 3 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace flagexp::cli

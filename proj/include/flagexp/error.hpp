#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flagexp {

enum class ErrorCode {
  UnsupportedFamily,
  RankTooLarge,
  GroupTooLarge,
  MismatchedRootSystem,
  EmptyFamily,
  PreconditionViolated,
  BadEndpoints,
  NotAWeight,
  InvalidSpec,
  InvalidFlagData,
  EnumerationBudgetExceeded,
  GapNotCertified,
  AllInfinite,
  PoleOrBeyond,
  ZeroVector,
  BadSampleCount,
  Syntax,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flagexp

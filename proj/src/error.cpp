#include "flagexp/error.hpp"

namespace flagexp {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::MismatchedRootSystem: return "MismatchedRootSystem";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BadEndpoints: return "BadEndpoints";
    case ErrorCode::NotAWeight: return "NotAWeight";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidFlagData: return "InvalidFlagData";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::GapNotCertified: return "GapNotCertified";
    case ErrorCode::AllInfinite: return "AllInfinite";
    case ErrorCode::PoleOrBeyond: return "PoleOrBeyond";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BadSampleCount: return "BadSampleCount";
    case ErrorCode::Syntax: return "Syntax";
  }
  return "Unknown";
}

}  // namespace flagexp

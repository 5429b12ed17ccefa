#ifndef VERMILION_ERROR_H_
#define VERMILION_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vermilion {

enum class ErrorCode {
  kNegativeEntry,
  kNonzeroDiagonal,
  kHoseViolation,
  kInvalidK,
  kInvalidArgument,
  kNotRegular,
  kNotSubstochastic,
  kInvalidEpsilon,
  kZeroDemand,
  kConfigInvalid,
  kBadDistributionFile,
  kParse,
  // The remaining codes flag broken internal invariants, not bad input.
  kInfeasible,
  kDeficitMismatch,
  kMatchingNotFound,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

  // True when the error signals an implementation bug rather than an input
  // problem.
  bool internal() const {
    return code_ == ErrorCode::kInfeasible ||
           code_ == ErrorCode::kDeficitMismatch ||
           code_ == ErrorCode::kMatchingNotFound;
  }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::kHoseViolation: return "HoseViolation";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotRegular: return "NotRegular";
    case ErrorCode::kNotSubstochastic: return "NotSubstochastic";
    case ErrorCode::kInvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::kZeroDemand: return "ZeroDemand";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kBadDistributionFile: return "BadDistributionFile";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kDeficitMismatch: return "DeficitMismatch";
    case ErrorCode::kMatchingNotFound: return "MatchingNotFound";
  }
  return "Unknown";
}

}  // namespace vermilion

#endif  // VERMILION_ERROR_H_

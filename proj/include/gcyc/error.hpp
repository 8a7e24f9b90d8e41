#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace gcyc {

enum class ErrorCode {
  InvalidInput,
  EmptySide,
  UnknownPoint,
  OutOfDomain,
  SideMismatch,
  NotInA,
  GaugeClassViolation,
  HypothesisViolated,
  NoConvergence,
  SeedNotEligible,
  InvalidPsi,
  ParamOutOfRange,
  EvaluationFailure,
  BetaNotContractive,
  NotLowerSolution,
  ConditionIvViolated,
  MonotonicityBroken,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown by every operation in the library. `detail` carries a
/// machine-readable witness (point ids, sample values) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json detail = nullptr)
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

}  // namespace gcyc

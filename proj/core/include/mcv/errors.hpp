#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcv {

/// Failure categories. The names are part of the CLI contract: error
/// messages start with the code name so callers can match on it.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonFinite,
  DegenerateColumn,
  NotPositiveDefinite,
  NoConvergence,
  ZeroMean,
  ZeroMeanForm,
  ZeroWhitenedMean,
  ZeroCV,
  WeightSum,
  InvalidDirection,
  NonConvergentSpec,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mcv

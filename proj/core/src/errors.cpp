#include "mcv/errors.hpp"

namespace mcv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::ZeroMeanForm: return "ZeroMeanForm";
    case ErrorCode::ZeroWhitenedMean: return "ZeroWhitenedMean";
    case ErrorCode::ZeroCV: return "ZeroCV";
    case ErrorCode::WeightSum: return "WeightSum";
    case ErrorCode::InvalidDirection: return "InvalidDirection";
    case ErrorCode::NonConvergentSpec: return "NonConvergentSpec";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace mcv

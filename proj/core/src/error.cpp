#include "mqap/error.hpp"

namespace mqap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidToken: return "InvalidToken";
    case ErrorCode::TokenCountMismatch: return "TokenCountMismatch";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InfeasibleCorrelation: return "InfeasibleCorrelation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::MissingRank: return "MissingRank";
    case ErrorCode::EmptyUnion: return "EmptyUnion";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InstanceLoadError: return "InstanceLoadError";
    case ErrorCode::OutputWriteError: return "OutputWriteError";
    case ErrorCode::InstanceMismatch: return "InstanceMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

}  // namespace mqap

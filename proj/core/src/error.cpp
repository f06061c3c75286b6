#include "rsh/error.hpp"

#include <utility>

namespace rsh {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RangeInverted: return "RangeInverted";
    case ErrorCode::NegativeFactor: return "NegativeFactor";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::InvalidImage: return "InvalidImage";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::UnsupportedDepth: return "UnsupportedDepth";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadManifest: return "BadManifest";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::string field)
    : std::runtime_error(std::move(message)), code_(code), field_(std::move(field)) {}

}  // namespace rsh

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsh {

enum class ErrorCode {
  RangeInverted,
  NegativeFactor,
  BadProbability,
  ChannelMismatch,
  InvalidImage,
  InvalidArgument,
  UnsupportedFormat,
  CorruptFile,
  UnsupportedDepth,
  IoFailure,
  EmptyInput,
  BadConfig,
  BadManifest,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as an Error carrying a code and,
/// for parameter problems, the dotted name of the offending field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string field = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace rsh

#ifndef MQAP_ERROR_HPP
#define MQAP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mqap {

enum class ErrorCode {
  EmptyInput,
  InvalidToken,
  TokenCountMismatch,
  NegativeEntry,
  InvalidInstance,
  Overflow,
  InfeasibleCorrelation,
  DimensionMismatch,
  LengthMismatch,
  EmptyPool,
  MissingRank,
  EmptyUnion,
  DegenerateSample,
  InvalidArgument,
  InstanceLoadError,
  OutputWriteError,
  InstanceMismatch,
  TooLarge,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mqap

#endif  // MQAP_ERROR_HPP

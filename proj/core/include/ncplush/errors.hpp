#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncplush {

enum class ErrorKind {
  InvalidArgument,
  NotHermitian,
  SingularGram,
  IndexOutOfRange,
  SingularPencil,
  ParseError,
  InvalidRealization,
  ReductionFailed,
  NotKNonnegative,
  MinimalityRequired,
  NotCertified,
  NotPlush,
  ZeroCoefficients,
  NotClosed,
  DimensionMismatch,
  VerificationFailed,
  WitnessSearchFailed,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (notably the CLI) can map it to a stable report field.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ncplush

#include "ncplush/errors.hpp"

namespace ncplush {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SingularPencil: return "SingularPencil";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidRealization: return "InvalidRealization";
    case ErrorKind::ReductionFailed: return "ReductionFailed";
    case ErrorKind::NotKNonnegative: return "NotKNonnegative";
    case ErrorKind::MinimalityRequired: return "MinimalityRequired";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::NotPlush: return "NotPlush";
    case ErrorKind::ZeroCoefficients: return "ZeroCoefficients";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::WitnessSearchFailed: return "WitnessSearchFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace ncplush

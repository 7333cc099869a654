#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrss {

enum class Errc {
  NotInvertible,
  NotCoprime,
  NotQuadraticResidue,
  BadThreshold,
  DuplicateX,
  InsufficientShares,
  HeaderMismatch,
  RootMismatch,
  MalformedHeader,
  UnsupportedMaxval,
  TruncatedPayload,
  BadMagic,
  HeaderInvariantViolated,
  DimensionMismatch,
  InvalidArgument,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotQuadraticResidue: return "NotQuadraticResidue";
    case Errc::BadThreshold: return "BadThreshold";
    case Errc::DuplicateX: return "DuplicateX";
    case Errc::InsufficientShares: return "InsufficientShares";
    case Errc::HeaderMismatch: return "HeaderMismatch";
    case Errc::RootMismatch: return "RootMismatch";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::UnsupportedMaxval: return "UnsupportedMaxval";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::BadMagic: return "BadMagic";
    case Errc::HeaderInvariantViolated: return "HeaderInvariantViolated";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure in the library surfaces as this exception; code() names the
/// failure kind so callers (and the CLI) can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qrss

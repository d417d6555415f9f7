#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace natfrag {

enum class ErrorKind {
  // arithmetic and parsing
  RadicandMismatch,
  DivisionByZero,
  ParseError,
  InvalidArgument,
  // sets and oracles
  NoSuccessor,
  NotAMember,
  EmptySet,
  NotAFragment,
  ShiftTooLarge,
  EpsTooLarge,
  OracleDomainError,
  CapExceeded,
  // approximation and extraction
  NoLeftValue,
  NoRightValue,
  CutInImage,
  NotInJ,
  DegenerateOracle,
  PreconditionFailed,
  StepVerificationFailed,
  TargetBelowOne,
  // coding
  ExpansionTerminated,
  InsufficientDigits,
  NegativeSummand,
  // analysis
  UnboundedInterval,
  NotMonotone,
  OutOfDomain,
  NotStrictlyIncreasing,
  VerificationFailed,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RadicandMismatch: return "RadicandMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NoSuccessor: return "NoSuccessor";
    case ErrorKind::NotAMember: return "NotAMember";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotAFragment: return "NotAFragment";
    case ErrorKind::ShiftTooLarge: return "ShiftTooLarge";
    case ErrorKind::EpsTooLarge: return "EpsTooLarge";
    case ErrorKind::OracleDomainError: return "OracleDomainError";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NoLeftValue: return "NoLeftValue";
    case ErrorKind::NoRightValue: return "NoRightValue";
    case ErrorKind::CutInImage: return "CutInImage";
    case ErrorKind::NotInJ: return "NotInJ";
    case ErrorKind::DegenerateOracle: return "DegenerateOracle";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::StepVerificationFailed: return "StepVerificationFailed";
    case ErrorKind::TargetBelowOne: return "TargetBelowOne";
    case ErrorKind::ExpansionTerminated: return "ExpansionTerminated";
    case ErrorKind::InsufficientDigits: return "InsufficientDigits";
    case ErrorKind::NegativeSummand: return "NegativeSummand";
    case ErrorKind::UnboundedInterval: return "UnboundedInterval";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// True for kinds that report a failed internal check (exit status 4).
constexpr bool is_verification_failure(ErrorKind kind) {
  return kind == ErrorKind::StepVerificationFailed ||
         kind == ErrorKind::VerificationFailed;
}

}  // namespace natfrag

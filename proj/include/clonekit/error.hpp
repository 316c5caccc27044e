#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clonekit {

enum class ErrorCode {
  InvalidRing,
  InvalidArgument,
  NotBoolean,
  CarrierTooLarge,
  IndexOutOfRange,
  ArityMismatch,
  TheoryMismatch,
  NotMember,
  ClosureViolated,
  EnumerationTooLarge,
  NotPartitionOfUnity,
  SumNotOne,
  DegenerateTheory,
  EmptyStalk,
  NotABSet,
  DecompositionFailed,
  SuiteFailed,
  ParseError,
  UnknownAtom,
  VarOutOfRange,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clonekit

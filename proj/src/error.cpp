#include "clonekit/error.hpp"

namespace clonekit {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidRing: return "InvalidRing";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotBoolean: return "NotBoolean";
    case ErrorCode::CarrierTooLarge: return "CarrierTooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::TheoryMismatch: return "TheoryMismatch";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::ClosureViolated: return "ClosureViolated";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::NotPartitionOfUnity: return "NotPartitionOfUnity";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::DegenerateTheory: return "DegenerateTheory";
    case ErrorCode::EmptyStalk: return "EmptyStalk";
    case ErrorCode::NotABSet: return "NotABSet";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::SuiteFailed: return "SuiteFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::VarOutOfRange: return "VarOutOfRange";
  }
  return "Unknown";
}

}  // namespace clonekit

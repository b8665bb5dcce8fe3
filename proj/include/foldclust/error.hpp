#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foldclust {

enum class ErrorCode {
  NotSkewSymmetrizable,
  NotSymmetrizable,
  MalformedCartan,
  MalformedMatrix,
  NotAPermutation,
  GroupTooLarge,
  UnknownVertex,
  LabelMismatch,
  NotEquivariant,
  NotAdmissible,
  InconsistentFold,
  NonIntegerFold,
  NotAcyclic,
  NotFiniteType,
  FrozenColumn,
  UnknownColumn,
  NonCommutingOrbit,
  FrozenOrbit,
  AdmissibilityLost,
  InexactDivision,
  SearchBudgetExceeded,
  GraphTruncated,
  InvalidWord,
  UnsupportedGroup,
  InvalidCharacterTable,
  Overflow,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSkewSymmetrizable: return "NotSkewSymmetrizable";
    case ErrorCode::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorCode::MalformedCartan: return "MalformedCartan";
    case ErrorCode::MalformedMatrix: return "MalformedMatrix";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::InconsistentFold: return "InconsistentFold";
    case ErrorCode::NonIntegerFold: return "NonIntegerFold";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::NotFiniteType: return "NotFiniteType";
    case ErrorCode::FrozenColumn: return "FrozenColumn";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::NonCommutingOrbit: return "NonCommutingOrbit";
    case ErrorCode::FrozenOrbit: return "FrozenOrbit";
    case ErrorCode::AdmissibilityLost: return "AdmissibilityLost";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::GraphTruncated: return "GraphTruncated";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::InvalidCharacterTable: return "InvalidCharacterTable";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace foldclust

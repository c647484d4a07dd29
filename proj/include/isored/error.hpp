#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isored {

enum class ErrorKind {
  Usage,
  DivisionByZero,
  PoleAtPoint,
  RootFindingFailed,
  DegreeCapExceeded,
  UnknownVertex,
  DuplicateVertex,
  EmptySet,
  NotStructural,
  LambdaLoop,
  SingularBlock,
  IdenticallyZeroDeterminant,
  NonConstantLoop,
  LoopInComplement,
  EmptyGraph,
  SearchBudgetExceeded,
  ParseError,
  UnknownRule,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::RootFindingFailed: return "RootFindingFailed";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotStructural: return "NotStructural";
    case ErrorKind::LambdaLoop: return "LambdaLoop";
    case ErrorKind::SingularBlock: return "SingularBlock";
    case ErrorKind::IdenticallyZeroDeterminant: return "IdenticallyZeroDeterminant";
    case ErrorKind::NonConstantLoop: return "NonConstantLoop";
    case ErrorKind::LoopInComplement: return "LoopInComplement";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownRule: return "UnknownRule";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. Operations that need to hand back
/// more context (a witness vertex, an intermediate graph) derive from this.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace isored

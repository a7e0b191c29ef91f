#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace advnet {

enum class Errc {
  // netgraph
  CyclicGraph,
  SourceHasInEdges,
  TerminalHasOutEdges,
  UnreachableTerminal,
  DanglingIntermediate,
  EmptyTerminalSet,
  UnknownVertex,
  Unreachable,
  NotATerminal,
  TooManyVertices,
  DimensionMismatch,
  // channel
  WordOutsideDomain,
  DomainTooLarge,
  SpaceMismatch,
  // gf
  NotPrimePower,
  LengthMismatch,
  DecodeFailure,
  // netcode
  ArityMismatch,
  ErrorOutsideVulnerableSet,
  NotPreceding,
  FieldMismatch,
  // schemes / bounds / reduce
  ParameterOutOfRange,
  FieldTooSmall,
  NotTwoLevel,
  PreconditionViolated,
  UnknownFamily,
  OutOfRange,
  NotSimple3Level,
  InvalidCutPair,
  // search / io
  BudgetExceeded,
  InvalidInput,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by scheme constructors when the field cannot host the RS codes they need.
class FieldTooSmallError : public Error {
 public:
  FieldTooSmallError(unsigned q, unsigned suggested_minimum);
  unsigned suggested_minimum() const noexcept { return suggested_minimum_; }

 private:
  unsigned suggested_minimum_;
};

}  // namespace advnet

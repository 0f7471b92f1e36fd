#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftlab {

enum class ErrorKind {
  InvalidSft,
  NotPrimitive,
  SymbolOutOfRange,
  InadmissibleWord,
  ConvergenceFailure,
  BudgetExceeded,
  WindowOverlap,
  WordTooShort,
  InsufficientWordLength,
  InvalidParameters,
  EmptyRegime,
  SeedSearchFailure,
  DepthExceeded,
  InvalidPair,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so front ends can map
/// it to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace shiftlab

#include "shiftlab/error.hpp"

namespace shiftlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSft: return "InvalidSft";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorKind::InadmissibleWord: return "InadmissibleWord";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::WindowOverlap: return "WindowOverlap";
    case ErrorKind::WordTooShort: return "WordTooShort";
    case ErrorKind::InsufficientWordLength: return "InsufficientWordLength";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::EmptyRegime: return "EmptyRegime";
    case ErrorKind::SeedSearchFailure: return "SeedSearchFailure";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::InvalidPair: return "InvalidPair";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace shiftlab

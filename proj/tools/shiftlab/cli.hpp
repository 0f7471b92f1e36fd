#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "shiftlab/error.hpp"

namespace shiftlab::cli {

/// Runs the command line (without argv[0]) and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 2 bad input, 3 not primitive, 4 word too short, 5 empty regime, 1 otherwise.
int exit_code(ErrorKind kind) noexcept;

}  // namespace shiftlab::cli

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace shiftlab::cli {

using FlagFilter = std::function<bool(const std::string& subcommand, const std::string& flag)>;

/// Removes "--manifest <path>" from args and splices the manifest's settings
/// in as flags right after the subcommand, so flags given explicitly win.
///
/// Keys map to flags by lowercasing and turning '_' into '-' ("N0" -> --n0,
/// "depth_budget" -> --depth-budget). Special keys:
///   "command"  the subcommand when args do not name one
///   "sft"      path, resolved against the manifest's directory
///   "seeds"    {"master": u64, "count": n} -> --seed, --seeds
///   "psi"      {"family": F, "c"|"tau"|"s"|"param": x, "points": [[N, Phi], ...]}
/// Arrays become comma-separated lists; true booleans become bare flags.
/// Throws MalformedInput for keys the subcommand does not accept.
std::vector<std::string> expand_manifest(const std::vector<std::string>& args,
                                         const std::vector<std::string>& subcommands, const FlagFilter& accepts);

}  // namespace shiftlab::cli

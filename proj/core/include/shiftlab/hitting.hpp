#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shiftlab/parry.hpp"
#include "shiftlab/run_length.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/target.hpp"

namespace shiftlab {

/// Strict: a censored L_N that cannot decide the inequality is an error.
/// Optimistic: censored runs count as infinitely long.
enum class CensorMode { Strict, Optimistic };

struct SurvivalReport {
  std::int64_t n0 = 1;
  std::int64_t n1 = 1;
  bool survived = true;
  std::optional<std::int64_t> first_failure;
  bool censored = false;  // some L_N in the window was censored
};

/// Checks L_N > Phi(N) - 1 for every N in [n0, n1].
/// Throws InsufficientWordLength (strict mode) or InvalidParameters.
SurvivalReport ea_survives(const RunLengths& runs, const TargetFunction& psi, std::int64_t n0, std::int64_t n1,
                           CensorMode mode = CensorMode::Strict);
SurvivalReport ea_survives(WordView w, const TargetFunction& psi, std::int64_t n0, std::int64_t n1,
                           CensorMode mode = CensorMode::Strict);

/// floor(ln n / h) + 1, the depth of the n-th target cylinder around 0^inf.
std::int64_t hitting_depth(std::int64_t n, double entropy);

struct HittingCounts {
  std::int64_t r = 0;  // #{n <= N : the hitting_depth(n) symbols after position n are all 0}
  double f = 0.0;      // sum_{n <= N} mu(0^hitting_depth(n))
};

/// Requires |w| >= N + floor(ln N / h) + 2, else InsufficientWordLength.
HittingCounts hitting_counts(WordView w, const Sft& sft, const ParryMeasure& measure, std::int64_t n);

struct RatioExtremes {
  double liminf = 0.0;
  double limsup = 0.0;
  std::int64_t argmin = 0;
  std::int64_t argmax = 0;
  std::size_t used = 0;  // checkpoints past the burn-in
};

/// min and max of L_N / Phi(N) over checkpoints[burn_in..]; checkpoints
/// with Phi(N) <= 0 or beyond the word are rejected.
RatioExtremes liminf_limsup_estimate(const RunLengths& runs, const TargetFunction& psi,
                                     std::span<const std::int64_t> checkpoints, std::size_t burn_in = 0);

/// first, first*ratio, ... (rounded, deduplicated) up to and including last.
std::vector<std::int64_t> geometric_checkpoints(std::int64_t first, std::int64_t last, double ratio = 2.0);

}  // namespace shiftlab

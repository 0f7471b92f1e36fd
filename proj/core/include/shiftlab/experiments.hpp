#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "shiftlab/hitting.hpp"
#include "shiftlab/parry.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/target.hpp"

namespace shiftlab {

struct SeedPlan {
  std::uint64_t master = 0;
  std::int64_t count = 1;
};

/// Seed of sample `index`: substream_key(master, index).
std::uint64_t sample_seed(const SeedPlan& plan, std::int64_t index);

/// requested > 0 wins; otherwise SHIFTLAB_THREADS, otherwise the hardware count.
int resolve_threads(int requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must
/// be written to slot i so that the merge order is the index order.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body);

struct Summary {
  std::int64_t samples = 0;
  double mean = 0.0;
  double median = 0.0;
  double p05 = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
  double iqr() const { return p75 - p25; }
};

/// Linear-interpolation quantiles of the values.
Summary summarize(std::vector<double> values);

struct LimitRow {
  std::int64_t seed_index = 0;
  std::uint64_t seed = 0;
  std::int64_t checkpoint = 0;
  std::int64_t longest = 0;
  double ratio = 0.0;  // L_N / log_A N
  bool censored = false;
};

struct LimitCheckpoint {
  std::int64_t checkpoint = 0;
  Summary ratio;
  std::int64_t censored = 0;
};

struct LimitResult {
  std::vector<LimitRow> rows;  // seed-major, checkpoints ascending
  std::vector<LimitCheckpoint> checkpoints;
};

struct LimitOptions {
  int threads = 0;
  std::int64_t growth_cap = 8;  // orbit length cap as a multiple of the largest checkpoint
};

/// L_N / log_A N at each checkpoint (N itself is always added) for every
/// seed. Checkpoints must lie in [2, N].
LimitResult limit_ratio_experiment(const ParryMeasure& measure, const SeedPlan& seeds, std::int64_t n,
                                   std::vector<std::int64_t> checkpoints, const LimitOptions& options = {});

struct SurvivalRow {
  std::int64_t seed_index = 0;
  std::uint64_t seed = 0;
  std::int64_t word_length = 0;
  SurvivalReport report;
};

struct DichotomyResult {
  std::vector<SurvivalRow> rows;
  std::int64_t survived = 0;
  std::int64_t censored = 0;
  double fraction = 0.0;
};

struct DichotomyOptions {
  int threads = 0;
  std::int64_t growth_cap = 8;
  CensorMode mode = CensorMode::Strict;
};

/// Fraction of seeds whose orbit passes ea_survives on [N0, N1]. Each orbit
/// is sampled to length N1 + 1 and extended while it still ends in 0, up to
/// growth_cap * (N1 + 1). LOG_RATE with c = 1 is rejected.
DichotomyResult dichotomy_experiment(const ParryMeasure& measure, const TargetFunction& psi, const SeedPlan& seeds,
                                     std::int64_t n0, std::int64_t n1, const DichotomyOptions& options = {});

struct HittingRow {
  std::int64_t seed_index = 0;
  std::uint64_t seed = 0;
  HittingCounts counts;
  double ratio = 0.0;  // R / F
};

struct HittingResult {
  std::vector<HittingRow> rows;
  Summary ratio;
};

HittingResult hitting_experiment(const Sft& sft, const ParryMeasure& measure, const SeedPlan& seeds, std::int64_t n,
                                 int threads = 0);

}  // namespace shiftlab

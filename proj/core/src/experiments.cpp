#include "shiftlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "shiftlab/error.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/sampler.hpp"

namespace shiftlab {

std::uint64_t sample_seed(const SeedPlan& plan, std::int64_t index) {
  return substream_key(plan.master, static_cast<std::uint64_t>(index));
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SHIFTLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  const int workers = static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), std::max<std::int64_t>(count, 1)));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::int64_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Summary summarize(std::vector<double> values) {
  Summary s;
  s.samples = static_cast<std::int64_t>(values.size());
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.median = quantile(0.5);
  s.p05 = quantile(0.05);
  s.p25 = quantile(0.25);
  s.p75 = quantile(0.75);
  s.p95 = quantile(0.95);
  return s;
}

LimitResult limit_ratio_experiment(const ParryMeasure& measure, const SeedPlan& seeds, std::int64_t n,
                                   std::vector<std::int64_t> checkpoints, const LimitOptions& options) {
  if (n < 2) fail(ErrorKind::InvalidParameters, "N must be >= 2");
  if (seeds.count < 1) fail(ErrorKind::InvalidParameters, "seed count must be >= 1");
  checkpoints.push_back(n);
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  for (std::int64_t c : checkpoints) {
    if (c < 2) fail(ErrorKind::InvalidParameters, "checkpoint N = " + std::to_string(c) + " has log_A N <= 0");
    if (c > n) fail(ErrorKind::InvalidParameters, "checkpoint " + std::to_string(c) + " exceeds N");
  }
  const OrbitSampler sampler(measure);
  const std::size_t k = checkpoints.size();
  LimitResult result;
  result.rows.resize(static_cast<std::size_t>(seeds.count) * k);
  const std::int64_t cap = options.growth_cap * checkpoints.back();
  parallel_for(seeds.count, resolve_threads(options.threads), [&](std::int64_t i) {
    const std::uint64_t seed = sample_seed(seeds, i);
    auto stream = sampler.stream(seed);
    const auto values = streaming_longest_runs(stream, checkpoints, cap);
    for (std::size_t j = 0; j < k; ++j) {
      LimitRow& row = result.rows[static_cast<std::size_t>(i) * k + j];
      row.seed_index = i;
      row.seed = seed;
      row.checkpoint = values[j].n;
      row.longest = values[j].longest;
      row.censored = values[j].censored;
      row.ratio = static_cast<double>(values[j].longest) * measure.entropy / std::log(static_cast<double>(values[j].n));
    }
  });
  for (std::size_t j = 0; j < k; ++j) {
    LimitCheckpoint agg;
    agg.checkpoint = checkpoints[j];
    std::vector<double> ratios;
    for (std::int64_t i = 0; i < seeds.count; ++i) {
      const auto& row = result.rows[static_cast<std::size_t>(i) * k + j];
      ratios.push_back(row.ratio);
      agg.censored += row.censored ? 1 : 0;
    }
    agg.ratio = summarize(std::move(ratios));
    result.checkpoints.push_back(agg);
  }
  return result;
}

DichotomyResult dichotomy_experiment(const ParryMeasure& measure, const TargetFunction& psi, const SeedPlan& seeds,
                                     std::int64_t n0, std::int64_t n1, const DichotomyOptions& options) {
  if (n0 < 1 || n1 <= n0) fail(ErrorKind::InvalidParameters, "need 1 <= N0 < N1");
  if (seeds.count < 1) fail(ErrorKind::InvalidParameters, "seed count must be >= 1");
  if (psi.family() == TargetFamily::LogRate && psi.parameter() == 1.0) {
    fail(ErrorKind::InvalidParameters, "LOG_RATE with c = 1 is the undecided boundary case");
  }
  const OrbitSampler sampler(measure);
  const std::int64_t base = n1 + 1;
  const std::int64_t cap = options.growth_cap * base;
  DichotomyResult result;
  result.rows.resize(static_cast<std::size_t>(seeds.count));
  parallel_for(seeds.count, resolve_threads(options.threads), [&](std::int64_t i) {
    SurvivalRow& row = result.rows[static_cast<std::size_t>(i)];
    row.seed_index = i;
    row.seed = sample_seed(seeds, i);
    auto stream = sampler.stream(row.seed);
    Word w;
    w.reserve(static_cast<std::size_t>(base));
    while (static_cast<std::int64_t>(w.size()) < base) w.push_back(stream.next());
    // A trailing zero run could still be the run that decides some L_N.
    while (w.back() == 0 && static_cast<std::int64_t>(w.size()) < cap) w.push_back(stream.next());
    row.word_length = static_cast<std::int64_t>(w.size());
    row.report = ea_survives(w, psi, n0, n1, options.mode);
  });
  for (const auto& row : result.rows) {
    result.survived += row.report.survived ? 1 : 0;
    result.censored += row.report.censored ? 1 : 0;
  }
  result.fraction = static_cast<double>(result.survived) / static_cast<double>(seeds.count);
  return result;
}

HittingResult hitting_experiment(const Sft& sft, const ParryMeasure& measure, const SeedPlan& seeds, std::int64_t n,
                                 int threads) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "N must be >= 1");
  if (seeds.count < 1) fail(ErrorKind::InvalidParameters, "seed count must be >= 1");
  const OrbitSampler sampler(measure);
  const std::int64_t length = n + hitting_depth(n, measure.entropy) + 1;
  HittingResult result;
  result.rows.resize(static_cast<std::size_t>(seeds.count));
  parallel_for(seeds.count, resolve_threads(threads), [&](std::int64_t i) {
    HittingRow& row = result.rows[static_cast<std::size_t>(i)];
    row.seed_index = i;
    row.seed = sample_seed(seeds, i);
    const Word w = sampler.sample(row.seed, length);
    row.counts = hitting_counts(w, sft, measure, n);
    row.ratio = static_cast<double>(row.counts.r) / row.counts.f;
  });
  std::vector<double> ratios;
  for (const auto& row : result.rows) ratios.push_back(row.ratio);
  result.ratio = summarize(std::move(ratios));
  return result;
}

}  // namespace shiftlab

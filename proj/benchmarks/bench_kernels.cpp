#include <benchmark/benchmark.h>

#include "shiftlab/cantor.hpp"
#include "shiftlab/parry.hpp"
#include "shiftlab/run_length.hpp"
#include "shiftlab/sampler.hpp"
#include "shiftlab/sft.hpp"

using namespace shiftlab;

namespace {

void BM_CountWordsExact(benchmark::State& state) {
  const Sft gm = Sft::golden_mean();
  for (auto _ : state) benchmark::DoNotOptimize(count_words_exact(gm, state.range(0)));
}
BENCHMARK(BM_CountWordsExact)->Arg(64)->Arg(4096)->Arg(1 << 16);

void BM_LogCountWords(benchmark::State& state) {
  const Sft gm = Sft::golden_mean();
  for (auto _ : state) benchmark::DoNotOptimize(log_count_words(gm, state.range(0)));
}
BENCHMARK(BM_LogCountWords)->Arg(1 << 24);

void BM_SampleOrbit(benchmark::State& state) {
  const ParryMeasure mu = parry_measure(state.range(0) == 0 ? Sft::full_shift(2) : Sft::golden_mean());
  const OrbitSampler sampler(mu);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(seed++, 1 << 20));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_SampleOrbit)->Arg(0)->Arg(1)->ArgName("golden_mean");  // 0: full 2-shift

void BM_RunLengths(benchmark::State& state) {
  const Word w = sample_orbit(parry_measure(Sft::golden_mean()), 5, 1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(run_lengths(w));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size()));
}
BENCHMARK(BM_RunLengths);

void BM_StreamingLongestRuns(benchmark::State& state) {
  const OrbitSampler sampler(parry_measure(Sft::full_shift(2)));
  const std::vector<std::int64_t> checkpoints{10'000, 100'000, 1'000'000};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto stream = sampler.stream(seed++);
    benchmark::DoNotOptimize(streaming_longest_runs(stream, checkpoints, 8'000'000));
  }
}
BENCHMARK(BM_StreamingLongestRuns);

CantorParams section4() {
  CantorParams p;
  p.a = 0.25;
  p.b = 1.0;
  return p;
}

void BM_CantorBuild(benchmark::State& state) {
  const Sft full = Sft::full_shift(2);
  CantorParams p = section4();
  p.depth_budget = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(CantorConstruction::build(full, p));
}
BENCHMARK(BM_CantorBuild)->Arg(100'000)->Arg(1'000'000);

void BM_CantorSample(benchmark::State& state) {
  const auto c = CantorConstruction::build(Sft::golden_mean(), section4());
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(c.sample_point(seed++, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CantorSample)->Arg(100'000);

}  // namespace

BENCHMARK_MAIN();

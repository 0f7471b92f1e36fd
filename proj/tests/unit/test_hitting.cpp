#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/experiments.hpp"
#include "shiftlab/hitting.hpp"
#include "shiftlab/run_length.hpp"
#include "shiftlab/sampler.hpp"
#include "shiftlab/target.hpp"

using namespace shiftlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no shiftlab::Error thrown";
  return ErrorKind::MalformedInput;
}

Word alternating(int length) {
  Word w(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) w[static_cast<std::size_t>(i)] = static_cast<Symbol>(i % 2 == 0 ? 1 : 0);
  return w;
}

// Direct distance form: min_{1<=n<=N} d(sigma^n w, 0^inf) < psi(N), with
// d = m^-i for the first nonzero symbol i positions after n.
bool direct_survives(const Word& w, int m, const TargetFunction& psi, std::int64_t n0, std::int64_t n1) {
  for (std::int64_t big_n = n0; big_n <= n1; ++big_n) {
    long double best = 1.0L;
    for (std::int64_t n = 1; n <= big_n; ++n) {
      std::int64_t i = 1;
      while (w[static_cast<std::size_t>(n + i - 1)] == 0) ++i;
      best = std::min(best, std::pow(static_cast<long double>(m), -static_cast<long double>(i)));
    }
    const long double radius = std::pow(static_cast<long double>(m), -static_cast<long double>(psi.phi(big_n)));
    if (!(best < radius)) return false;
  }
  return true;
}

}  // namespace

TEST(RunLengths, Examples) {
  const RunLengths a = run_lengths(parse_digits("10010"));
  EXPECT_EQ(a.l(1), 2);
  EXPECT_EQ(a.l(2), 1);
  EXPECT_EQ(a.l(3), 0);
  EXPECT_EQ(a.l(4), 1);
  EXPECT_FALSE(a.l_censored(3));
  EXPECT_TRUE(a.l_censored(4));
  EXPECT_EQ(a.L(3), 2);
  EXPECT_FALSE(a.L_censored(3));

  const RunLengths b = run_lengths(parse_digits("101010"));
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(b.L(n), 1);
    EXPECT_FALSE(b.L_censored(n));
  }

  const RunLengths c = run_lengths(parse_digits("000000"));
  for (int n = 1; n <= 5; ++n) {
    EXPECT_TRUE(c.l_censored(n));
    EXPECT_EQ(c.l(n), 6 - n);
    EXPECT_TRUE(c.L_censored(n));
  }
  EXPECT_EQ(kind_of([] { run_lengths(parse_digits("0")); }), ErrorKind::WordTooShort);
}

TEST(RunLengths, MatchNaiveOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    std::bernoulli_distribution zero(0.3 + 0.6 * (trial % 5) / 4.0);
    Word w(static_cast<std::size_t>(2 + trial % 60));
    for (auto& s : w) s = zero(rng) ? 0 : 1;
    const RunLengths r = run_lengths(w);
    std::int64_t prev = 0;
    for (std::int64_t n = 1; n <= r.max_index(); ++n) {
      const auto naive = oracle::run_at(w, n);
      EXPECT_EQ(r.l(n), naive.length);
      EXPECT_EQ(r.L(n), oracle::longest(w, n));
      EXPECT_GE(r.L(n), prev);
      EXPECT_LE(r.L(n), r.word_length() - 1);
      prev = r.L(n);
      if (naive.censored) EXPECT_TRUE(r.l_censored(n));
    }
  }
}

TEST(RunLengths, CensoringIsMonotoneUnderExtension) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    Word w(40);
    for (auto& s : w) s = rng() % 3 == 0 ? 1 : 0;
    Word longer = w;
    for (int i = 0; i < 40; ++i) longer.push_back(rng() % 3 == 0 ? 1 : 0);
    const RunLengths a = run_lengths(w), b = run_lengths(longer);
    for (std::int64_t n = 1; n <= a.max_index(); ++n) {
      if (!a.L_censored(n)) EXPECT_EQ(a.L(n), b.L(n));
      else EXPECT_LE(a.L(n), b.L(n));
    }
  }
}

TEST(RunLengths, StreamingMatchesBatch) {
  const ParryMeasure mu = parry_measure(Sft::golden_mean());
  const OrbitSampler sampler(mu);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::vector<std::int64_t> checkpoints{1, 2, 5, 17, 100, 999, 4000};
    auto stream = sampler.stream(seed);
    const auto values = streaming_longest_runs(stream, checkpoints, 20000);
    const Word w = sampler.sample(seed, stream.position());
    const RunLengths r = run_lengths(w);
    for (const auto& v : values) {
      EXPECT_FALSE(v.censored);
      EXPECT_EQ(v.longest, r.L(v.n)) << seed << " " << v.n;
    }
  }
}

TEST(RunLengths, LateNonzeroSymbolCapsLongestRun) {
  // A nonzero symbol beyond T/2 keeps L_N <= (1 + eps) N from holding
  // throughout the final quarter.
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int t = 200;
    Word w(t, 0);
    for (auto& s : w) s = rng() % 4 == 0 ? 1 : 0;
    w[static_cast<std::size_t>(t / 2 + rng() % (t / 2))] = 1;
    const RunLengths r = run_lengths(w);
    bool all_above = true;
    for (std::int64_t n = 3 * t / 4; n <= r.max_index(); ++n) all_above = all_above && r.L(n) > 1.05 * n;
    EXPECT_FALSE(all_above);
  }
}

TEST(Target, Families) {
  const double h = std::log(2.0);
  const TargetFunction lr = TargetFunction::log_rate(2.0, h);
  EXPECT_NEAR(lr.phi(1024), 20.0, 1e-12);
  EXPECT_EQ(lr.phi(1), 0.0);
  EXPECT_EQ(lr.tau(), 0.0);
  const TargetFunction lin = TargetFunction::linear_rate(0.5);
  EXPECT_EQ(lin.phi(10), 5.0);
  EXPECT_EQ(lin.tau(), 0.5);
  const TargetFunction pw = TargetFunction::power_rate(0.5);
  EXPECT_NEAR(pw.phi(625), 25.0, 1e-12);
  EXPECT_EQ(pw.tau(), 0.0);
  EXPECT_NEAR(pw.regularity_ratio(1e8), 1.0, 1e-3);
  const TargetFunction tab = TargetFunction::table({{1, 0}, {10, 9}, {20, 10}});
  EXPECT_NEAR(tab.phi(5.5), 4.5, 1e-12);
  EXPECT_EQ(tab.phi(100), 10.0);
  EXPECT_EQ(TargetFunction::zero().phi(1e9), 0.0);
  EXPECT_EQ(target_family_from_string("POWER_RATE"), TargetFamily::PowerRate);
}

TEST(Target, InverseFloor) {
  const TargetFunction pw = TargetFunction::power_rate(0.5);
  EXPECT_EQ(pw.inverse_floor(25.0), 625);
  EXPECT_EQ(pw.inverse_floor(24.99), 624);
  const TargetFunction lin = TargetFunction::linear_rate(3.0);
  for (int y = 0; y < 50; ++y) {
    const auto x = lin.inverse_floor(y);
    EXPECT_LE(lin.phi(x), y);
    EXPECT_GT(lin.phi(x + 1), y);
  }
}

TEST(EaSurvives, Examples) {
  const Word alt = alternating(40);
  EXPECT_TRUE(ea_survives(alt, TargetFunction::zero(), 1, 30).survived);
  const SurvivalReport r = ea_survives(alt, TargetFunction::linear_rate(1.0), 1, 30);
  EXPECT_FALSE(r.survived);
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(*r.first_failure, 2);

  Word zeros(50, 0);
  zeros.push_back(1);
  zeros.push_back(0);
  zeros.push_back(1);
  EXPECT_TRUE(ea_survives(zeros, TargetFunction::linear_rate(1.0), 1, 40).survived);
  EXPECT_TRUE(ea_survives(zeros, TargetFunction::log_rate(3.0, std::log(2.0)), 1, 40).survived);
}

TEST(EaSurvives, CensoringModes) {
  Word w = alternating(20);
  for (int i = 0; i < 5; ++i) w.push_back(0);
  const TargetFunction psi = TargetFunction::linear_rate(0.5);
  // N near the end: L_N is a censored lower bound of 5 against Phi(N) - 1 ~ 10.
  EXPECT_EQ(kind_of([&] { ea_survives(w, psi, 20, 24); }), ErrorKind::InsufficientWordLength);
  EXPECT_TRUE(ea_survives(w, psi, 20, 24, CensorMode::Optimistic).survived);
  EXPECT_EQ(kind_of([&] { ea_survives(w, psi, 1, 40); }), ErrorKind::InsufficientWordLength);
}

TEST(EaSurvives, AgreesWithDistanceForm) {
  std::mt19937_64 rng(12);
  const ParryMeasure gm = parry_measure(Sft::golden_mean());
  const ParryMeasure full = parry_measure(Sft::full_shift(2));
  for (int trial = 0; trial < 500; ++trial) {
    const ParryMeasure& mu = trial % 2 ? gm : full;
    Word w = sample_orbit(mu, 1000 + trial, 10000);
    // End with a 1 so nothing is censored.
    w.back() = 1;
    if (trial % 2 && w[w.size() - 2] == 1) w[w.size() - 2] = 0;
    const TargetFunction psi = trial % 3 == 0   ? TargetFunction::linear_rate(0.002 * (trial % 7))
                               : trial % 3 == 1 ? TargetFunction::log_rate(0.3 + 0.1 * (trial % 9), mu.entropy)
                                                : TargetFunction::log_rate(1.5, mu.entropy);
    const std::int64_t n0 = 50 + trial % 100, n1 = n0 + 150;
    EXPECT_EQ(ea_survives(w, psi, n0, n1).survived, direct_survives(w, 2, psi, n0, n1)) << trial;
  }
}

TEST(Hitting, DepthAndFullShiftCounts) {
  const double h = std::log(2.0);
  EXPECT_EQ(hitting_depth(1, h), 1);
  EXPECT_EQ(hitting_depth(2, h), 2);
  EXPECT_EQ(hitting_depth(3, h), 2);
  EXPECT_EQ(hitting_depth(4, h), 3);
  EXPECT_EQ(hitting_depth(1024, h), 11);
  const Sft full = Sft::full_shift(2);
  const ParryMeasure mu = parry_measure(full);
  Word w = parse_digits("0011111111");
  EXPECT_NEAR(hitting_counts(w, full, mu, 1).f, 0.5, 1e-15);
  EXPECT_NEAR(hitting_counts(w, full, mu, 3).f, 1.0, 1e-15);
  EXPECT_EQ(hitting_counts(w, full, mu, 2).r, 1);
  EXPECT_EQ(kind_of([&] { hitting_counts(parse_digits("0011"), full, mu, 3); }), ErrorKind::InsufficientWordLength);
}

TEST(Hitting, NoLongZeroBlocks) {
  const Sft gm = Sft::golden_mean();
  const ParryMeasure mu = parry_measure(gm);
  // In 1010... only n = 1 has depth 1; every later target needs "00".
  const HittingCounts c = hitting_counts(alternating(100), gm, mu, 60);
  EXPECT_EQ(c.r, 1);
  EXPECT_GT(c.f, 0.0);
  const Word ones(80, 1);
  EXPECT_EQ(hitting_counts(ones, Sft::full_shift(2), parry_measure(Sft::full_shift(2)), 50).r, 0);
}

TEST(Hitting, CountsMatchNaive) {
  const Sft full = Sft::full_shift(2);
  const ParryMeasure mu = parry_measure(full);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Word w = sample_orbit(mu, seed, 3000);
    const std::int64_t n = 2000;
    std::int64_t r = 0;
    double f = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      const auto depth = static_cast<std::int64_t>(std::floor(std::log2(static_cast<double>(k)))) + 1;
      bool zeros = true;
      for (std::int64_t i = 1; i <= depth; ++i) zeros = zeros && w[static_cast<std::size_t>(k + i - 1)] == 0;
      r += zeros;
      f += std::ldexp(1.0, static_cast<int>(-depth));
    }
    const HittingCounts c = hitting_counts(w, full, mu, n);
    EXPECT_EQ(c.r, r);
    EXPECT_NEAR(c.f, f, 1e-9);
  }
}

TEST(Estimates, LiminfLimsup) {
  const RunLengths alt = run_lengths(alternating(5000));
  const auto cps = geometric_checkpoints(2, 4000);
  const RatioExtremes e = liminf_limsup_estimate(alt, TargetFunction::linear_rate(1.0), cps);
  EXPECT_LT(e.limsup, 0.6);
  EXPECT_LT(e.liminf, 0.01);
  Word zeros(3000, 0);
  zeros.push_back(1);
  const RatioExtremes z = liminf_limsup_estimate(run_lengths(zeros), TargetFunction::linear_rate(1.0),
                                                 geometric_checkpoints(2, 2000));
  EXPECT_GE(z.liminf, 1.0);
  EXPECT_EQ(geometric_checkpoints(1, 20), (std::vector<std::int64_t>{1, 2, 4, 8, 16, 20}));
}

TEST(Experiments, LimitDeterministicAcrossThreads) {
  const ParryMeasure mu = parry_measure(Sft::golden_mean());
  LimitOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const LimitResult a = limit_ratio_experiment(mu, {9, 40}, 20000, {100, 1000}, one);
  const LimitResult b = limit_ratio_experiment(mu, {9, 40}, 20000, {100, 1000}, four);
  ASSERT_EQ(a.rows.size(), 120u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].longest, b.rows[i].longest);
    EXPECT_EQ(a.rows[i].ratio, b.rows[i].ratio);
    EXPECT_FALSE(a.rows[i].censored);
  }
  // Each row agrees with a batch recomputation of its orbit.
  const OrbitSampler sampler(mu);
  const Word w = sampler.sample(sample_seed({9, 40}, 3), 60000);
  const RunLengths r = run_lengths(w);
  EXPECT_EQ(a.rows[3 * 3 + 1].longest, r.L(1000));
  EXPECT_EQ(kind_of([&] { limit_ratio_experiment(mu, {1, 2}, 100, {1, 10}); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([&] { limit_ratio_experiment(mu, {1, 2}, 100, {200}); }), ErrorKind::InvalidParameters);
}

TEST(Experiments, DichotomySmall) {
  const Sft gm = Sft::golden_mean();
  const ParryMeasure mu = parry_measure(gm);
  const SeedPlan plan{5, 60};
  const auto weak = dichotomy_experiment(mu, TargetFunction::log_rate(0.5, mu.entropy), plan, 100, 5000);
  const auto strong = dichotomy_experiment(mu, TargetFunction::log_rate(2.0, mu.entropy), plan, 100, 5000);
  EXPECT_GT(weak.fraction, strong.fraction);
  EXPECT_EQ(dichotomy_experiment(mu, TargetFunction::zero(), plan, 100, 5000).fraction, 1.0);
  EXPECT_EQ(kind_of([&] { dichotomy_experiment(mu, TargetFunction::log_rate(1.0, mu.entropy), plan, 10, 100); }),
            ErrorKind::InvalidParameters);
}

TEST(Experiments, SummaryQuantiles) {
  const Summary s = summarize({4, 1, 3, 2, 5});
  EXPECT_EQ(s.samples, 5);
  EXPECT_EQ(s.median, 3.0);
  EXPECT_EQ(s.p25, 2.0);
  EXPECT_EQ(s.p75, 4.0);
  EXPECT_EQ(s.mean, 3.0);
  EXPECT_NEAR(s.p05, 1.2, 1e-12);
}

TEST(Experiments, ResolveThreads) {
  EXPECT_EQ(resolve_threads(3), 3);
  setenv("SHIFTLAB_THREADS", "2", 1);
  EXPECT_EQ(resolve_threads(0), 2);
  unsetenv("SHIFTLAB_THREADS");
  EXPECT_GE(resolve_threads(0), 1);
}

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftlab/cantor.hpp"
#include "shiftlab/dimension.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/hitting.hpp"
#include "shiftlab/run_length.hpp"

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

CantorParams section4(double a, double b, std::int64_t budget = 300000) {
  CantorParams p;
  p.a = a;
  p.b = b;
  p.depth_budget = budget;
  return p;
}

CantorParams case6(int p, std::int64_t budget = 200000) {
  CantorParams c;
  c.variant = Variant::Case6;
  c.a = 0.0;
  c.b = 0.0;
  c.p = p;
  c.psi = TargetFunction::power_rate(0.5);
  c.depth_budget = budget;
  return c;
}

const Sft kFull = Sft::full_shift(2);

}  // namespace

TEST(Section4, HandDerivedLevelOne) {
  const auto c = CantorConstruction::build(kFull, section4(0.25, 1.0));
  EXPECT_EQ(c.k0(), 1);
  const Level& l1 = c.level(1);
  EXPECT_EQ(l1.n, 17);
  EXPECT_EQ(l1.m_or_d, 35);
  EXPECT_EQ(c.level(2).n, 65);
  EXPECT_EQ(l1.t_or_l, 1);
  EXPECT_EQ(l1.end, 66);
  EXPECT_NEAR(c.log_mass(1), -29.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(c.local_dimension(1), 29.0 / 66.0, 1e-12);
  EXPECT_EQ(c.log_mass(0), 0.0);
}

TEST(Section4, SequencesFollowTheFormulas) {
  for (auto [a, b] : {std::pair{0.25, 1.0}, {0.5, 2.0}, {0.1, 0.5}, {0.3, 3.0}}) {
    const auto c = CantorConstruction::build(kFull, section4(a, b, 2'000'000));
    const double r = b / a;
    std::int64_t previous_width = 0;
    for (const Level& lv : c.levels()) {
      const auto n = static_cast<std::int64_t>(std::floor(std::pow(r, lv.k + c.k0()))) + 1;
      const auto n_next = static_cast<std::int64_t>(std::floor(std::pow(r, lv.k + 1 + c.k0()))) + 1;
      EXPECT_EQ(lv.n, n);
      EXPECT_EQ(lv.m_or_d, static_cast<std::int64_t>(std::floor((1 + b) * n)) + 1);
      const std::int64_t width = lv.m_or_d - lv.n;
      EXPECT_GT(width, previous_width);
      EXPECT_LT(lv.m_or_d, n_next);
      // t is the largest integer with m + t (m - n) < n_{k+1}.
      EXPECT_LT(lv.m_or_d + lv.t_or_l * width, n_next);
      EXPECT_GE(lv.m_or_d + (lv.t_or_l + 1) * width, n_next);
      EXPECT_GE(lv.free_length, 1);
      EXPECT_EQ(lv.end, n_next + lv.k);
      previous_width = width;
    }
  }
}

TEST(Section4, K0Rule) {
  // (b/a)^k0 must exceed max{a(2+b)/(b(1-a)-a), a(1+b)/(b(b-a))}.
  EXPECT_EQ(CantorConstruction::build(kFull, section4(0.5, 2.0)).k0(), 2);
  EXPECT_EQ(CantorConstruction::build(kFull, section4(0.5, 2.0)).level(1).n, 65);
  CantorParams fixed = section4(0.25, 1.0);
  fixed.k0 = 3;
  EXPECT_EQ(CantorConstruction::build(kFull, fixed).level(1).n, 257);
}

TEST(Section4, Errors) {
  EXPECT_EQ(kind_of([] { CantorConstruction::build(kFull, section4(0.5, 0.5)); }), ErrorKind::EmptyRegime);
  EXPECT_EQ(kind_of([] { CantorConstruction::build(kFull, section4(0.5, 0.9)); }), ErrorKind::EmptyRegime);
  EXPECT_EQ(kind_of([] { CantorConstruction::build(kFull, section4(0.5, 1.0)); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { CantorConstruction::build(kFull, section4(1.0, 2.0)); }), ErrorKind::InvalidParameters);
  const auto c = CantorConstruction::build(kFull, section4(0.25, 1.0));
  EXPECT_EQ(kind_of([&] { c.level(c.depth() + 1); }), ErrorKind::DepthExceeded);
  EXPECT_EQ(kind_of([&] { c.sample_point(1, c.levels().back().end + 1); }), ErrorKind::DepthExceeded);
}

TEST(Section4, MassDecreasesAndUsesExactCounts) {
  const Sft gm = Sft::golden_mean();
  const auto c = CantorConstruction::build(gm, section4(0.25, 1.0, 2'000'000));
  ASSERT_GE(c.depth(), 3);
  double previous = 0.0;
  for (const Level& lv : c.levels()) {
    EXPECT_LT(lv.log_mass, previous);
    EXPECT_NEAR(lv.log_mass, previous - lv.log_count, 1e-9 * std::abs(lv.log_mass));
    previous = lv.log_mass;
  }
  // Block lengths <= 20 cross-checked against enumeration.
  const Level& l1 = c.level(1);
  ASSERT_LE(l1.free_length, 20);
  ASSERT_LE(l1.tail_length, 20);
  const double expected = l1.t_or_l * std::log(static_cast<double>(oracle::enumerate(gm.rows(), l1.free_length).size())) +
                          std::log(static_cast<double>(oracle::enumerate(gm.rows(), l1.tail_length).size()));
  EXPECT_NEAR(l1.log_count, expected, 1e-12);
}

TEST(Section4, LocalDimensionApproachesTarget) {
  struct Case {
    double a, b, target;
    std::optional<int> k0;
  };
  for (const Case& t : {Case{0.25, 1.0, 1.0 / 3.0, {}}, Case{0.5, 2.0, 1.0 / 9.0, {}}, Case{0.0, 1.0, 0.5, 40}}) {
    CantorParams p = section4(t.a, t.b, 100000);
    p.k0 = t.k0;
    const auto c = CantorConstruction::build(kFull, p);
    ASSERT_GE(c.depth(), 2);
    EXPECT_NEAR(c.target_dimension(), t.target, 1e-12);
    double previous_gap = 1e9;
    for (int k = 1; k <= c.depth(); ++k) {
      const double gap = std::abs(c.plateau_local_dimension(k) - t.target);
      EXPECT_LE(gap, previous_gap + 1e-12) << t.a << " " << t.b << " k=" << k;
      previous_gap = gap;
    }
    EXPECT_LT(previous_gap, 0.05) << t.a << " " << t.b;
  }
}

TEST(Section4, SampledPointStructure) {
  const auto c = CantorConstruction::build(kFull, section4(0.25, 1.0));
  const std::int64_t length = c.levels().back().end;
  const SampledPoint s = c.sample_with_mass(42, length);
  ASSERT_EQ(static_cast<std::int64_t>(s.word.size()), length);
  for (int i = 0; i < 17; ++i) EXPECT_EQ(s.word[i], 0);
  EXPECT_EQ(s.word[17], 1);  // the marker opens level 1
  // Mass along the point: nonincreasing, exact at every level end.
  for (std::size_t i = 1; i < s.log_mass.size(); ++i) EXPECT_LE(s.log_mass[i], s.log_mass[i - 1] + 1e-9);
  for (const Level& lv : c.levels()) EXPECT_NEAR(s.log_mass[lv.end - 1], lv.log_mass, 1e-9 * std::abs(lv.log_mass));
  // Deterministic per seed; another seed changes only the free blocks.
  EXPECT_EQ(c.sample_point(42, length), s.word);
  const Word other = c.sample_point(43, length);
  EXPECT_NE(other, s.word);
  EXPECT_TRUE(std::equal(other.begin(), other.begin() + 18, s.word.begin()));
}

TEST(Section4, PointRecoversLiminfAndLimsup) {
  const auto c = CantorConstruction::build(kFull, section4(0.25, 1.0));
  const std::int64_t length = c.levels().back().end;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const RunLengths runs = run_lengths(c.sample_point(seed, length));
    const TargetFunction phi = c.ratio_target();
    // Checkpoints around N_k ~ 1e5.
    std::vector<std::int64_t> lows{c.liminf_checkpoints()[5]}, highs{c.limsup_checkpoints()[5]};
    EXPECT_NEAR(liminf_limsup_estimate(runs, phi, lows).liminf, 0.25, 0.05);
    EXPECT_NEAR(liminf_limsup_estimate(runs, phi, highs).limsup, 1.0, 0.05);
  }
}

TEST(Section4, GoldenMeanPointIsAdmissible) {
  const Sft gm = Sft::golden_mean();
  const auto c = CantorConstruction::build(gm, section4(0.25, 1.0, 50000));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Word w = c.sample_point(seed, c.levels().back().end);
    EXPECT_TRUE(is_admissible(gm, w));
  }
  // The zero block of every level shows up as a lower bound on L.
  const RunLengths runs = run_lengths(c.sample_point(0, c.levels().back().end));
  for (const Level& lv : c.levels()) {
    if (lv.k == c.depth()) break;
    const Level& next = c.level(lv.k + 1);
    EXPECT_GE(runs.L(c.limsup_checkpoints()[static_cast<std::size_t>(lv.k - 1)]), next.free_length);
  }
}

TEST(Case6, SeedingExample) {
  const auto c = CantorConstruction::build(kFull, case6(3));
  EXPECT_EQ(c.initial_length(), 625);
  EXPECT_EQ(c.initial_d(), 5);
  EXPECT_EQ(c.level(1).n, 641);
}

TEST(Case6, LevelInvariants) {
  const auto c = CantorConstruction::build(kFull, case6(5));
  std::int64_t n_prev = c.initial_length(), d_prev = c.initial_d();
  for (const Level& lv : c.levels()) {
    EXPECT_EQ(lv.n, n_prev + 5 * d_prev + 1);
    EXPECT_EQ(lv.m_or_d, static_cast<std::int64_t>(std::floor(std::sqrt(std::sqrt(static_cast<double>(lv.n))))));
    EXPECT_EQ((lv.t_or_l + 1) * d_prev + lv.r, lv.n - n_prev);
    EXPECT_GE(lv.r, 0);
    EXPECT_LT(lv.r, d_prev);
    EXPECT_NEAR(lv.log_count, lv.t_or_l * (d_prev - 1) * std::log(2.0), 1e-9);
    n_prev = lv.n;
    d_prev = lv.m_or_d;
  }
}

TEST(Case6, DeepestLocalDimensionGrowsWithP) {
  double previous = 0.0;
  for (int p : {3, 5, 9}) {
    const auto c = CantorConstruction::build(kFull, case6(p));
    const double deepest = c.plateau_local_dimension(c.depth());
    EXPECT_GE(deepest, 1.0 - 2.0 / p - 0.05) << p;
    EXPECT_GT(deepest, previous);
    previous = deepest;
  }
}

TEST(CaseVariants, BuildAndSample) {
  const Sft gm = Sft::golden_mean();
  struct V {
    Variant v;
    double a, b;
    TargetFunction psi;
  };
  const std::vector<V> variants{
      {Variant::Case2, 0.5, 1.0, TargetFunction::power_rate(0.5)},
      {Variant::Case3, 0.5, kInfinity, TargetFunction::power_rate(0.5)},
      {Variant::Case4, 0.0, 1.0, TargetFunction::power_rate(0.5)},
      {Variant::Case5, 0.0, kInfinity, TargetFunction::log_rate(3.0, entropy(gm))},
      {Variant::Case6, 0.0, 0.0, TargetFunction::power_rate(0.5)},
  };
  for (const V& t : variants) {
    CantorParams p;
    p.variant = t.v;
    p.a = t.a;
    p.b = t.b;
    p.psi = t.psi;
    p.depth_budget = 400000;
    const auto c = CantorConstruction::build(gm, p);
    ASSERT_GE(c.depth(), 1) << to_string(t.v);
    std::int64_t n_prev = c.initial_length();
    for (const Level& lv : c.levels()) {
      EXPECT_GE(lv.n - n_prev, p.p * (lv.k == 1 ? c.initial_d() : c.level(lv.k - 1).m_or_d));
      n_prev = lv.n;
    }
    const Word w = c.sample_point(7, c.levels().back().end);
    EXPECT_TRUE(is_admissible(gm, w)) << to_string(t.v);
    for (std::int64_t i = 0; i < c.initial_length(); ++i) EXPECT_EQ(w[static_cast<std::size_t>(i)], 0);
  }
}

TEST(CaseVariants, Case2RatioOfTargets) {
  CantorParams p;
  p.variant = Variant::Case2;
  p.a = 0.5;
  p.b = 1.0;
  p.psi = TargetFunction::power_rate(0.5);
  p.depth_budget = 100'000'000;
  const auto c = CantorConstruction::build(kFull, p);
  ASSERT_GE(c.depth(), 3);
  const auto& lv = c.levels();
  const double ratio = std::sqrt(static_cast<double>(lv.back().n)) / std::sqrt(static_cast<double>(lv[lv.size() - 2].n));
  EXPECT_NEAR(ratio, 2.0, 0.1);
}

TEST(CaseVariants, Errors) {
  CantorParams p = case6(3);
  p.p = 2;
  EXPECT_EQ(kind_of([&] { CantorConstruction::build(kFull, p); }), ErrorKind::InvalidParameters);
  p = case6(3);
  p.psi = TargetFunction::linear_rate(0.5);
  EXPECT_EQ(kind_of([&] { CantorConstruction::build(kFull, p); }), ErrorKind::InvalidParameters);
  p = case6(3);
  p.psi.reset();
  EXPECT_EQ(kind_of([&] { CantorConstruction::build(kFull, p); }), ErrorKind::InvalidParameters);
  p = case6(3);
  p.variant = Variant::Case2;  // needs a > 0
  EXPECT_EQ(kind_of([&] { CantorConstruction::build(kFull, p); }), ErrorKind::InvalidParameters);
  p = case6(3);
  p.psi = TargetFunction::log_rate(0.5, std::log(2.0));  // grows too slowly to seed
  EXPECT_EQ(kind_of([&] { CantorConstruction::build(kFull, p); }), ErrorKind::SeedSearchFailure);
  EXPECT_EQ(variant_from_string("CASE4"), Variant::Case4);
  EXPECT_EQ(kind_of([] { variant_from_string("CASE9"); }), ErrorKind::MalformedInput);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/sft.hpp"

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

const Matrix01 kGolden{{1, 1}, {1, 0}};

}  // namespace

TEST(SftConstruction, RejectsBadMatrices) {
  EXPECT_EQ(kind_of([] { Sft(Matrix01{{1, 0}, {0, 1}}); }), ErrorKind::NotPrimitive);
  EXPECT_EQ(kind_of([] { Sft(Matrix01{{0, 1}, {1, 1}}); }), ErrorKind::InvalidSft);     // excludes 0^inf
  EXPECT_EQ(kind_of([] { Sft(Matrix01{{1, 1}, {0, 0}}); }), ErrorKind::InvalidSft);     // dead row
  EXPECT_EQ(kind_of([] { Sft(Matrix01{{1, 0}, {1, 0}}); }), ErrorKind::InvalidSft);     // dead column
  EXPECT_EQ(kind_of([] { Sft(Matrix01{{1, 1}, {1}}); }), ErrorKind::InvalidSft);        // ragged
  EXPECT_EQ(kind_of([] { Sft(Matrix01{{1}}); }), ErrorKind::InvalidSft);                // m < 2
  EXPECT_EQ(kind_of([] { Sft(Matrix01{{1, 2}, {1, 1}}); }), ErrorKind::InvalidSft);     // not 0/1
}

TEST(SftCount, SpecExamples) {
  EXPECT_EQ(count_words_exact(Sft::full_shift(2), 3), 8);
  EXPECT_EQ(count_words_exact(Sft::golden_mean(), 1), 2);
  EXPECT_EQ(count_words_exact(Sft::golden_mean(), 5), 13);
}

TEST(SftCount, GoldenMeanIsFibonacci) {
  const Sft gm = Sft::golden_mean();
  for (int n = 1; n <= 30; ++n) EXPECT_EQ(count_words_exact(gm, n), oracle::fibonacci(n + 2)) << n;
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(count_words_exact(gm, n), oracle::enumerate(kGolden, n).size()) << n;
}

TEST(SftCount, MatchesEnumerationOnRandomShifts) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 3;
    const Matrix01 a = oracle::random_primitive(m, rng);
    const Sft sft(a);
    for (int n = 1; n <= (m == 4 ? 7 : 10); ++n) {
      EXPECT_EQ(count_words_exact(sft, n), oracle::enumerate(a, n).size());
    }
  }
}

TEST(SftCount, LogAgreesWithExact) {
  const Sft gm = Sft::golden_mean();
  for (std::int64_t n : {1, 2, 10, 100, 1000, 5000}) {
    const WordCount wc = count_words(gm, n);
    ASSERT_TRUE(wc.exact.has_value());
    mpz_class x = *wc.exact;
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, x.get_mpz_t());
    const double expected = std::log(mant) + static_cast<double>(e) * std::log(2.0);
    EXPECT_NEAR(wc.log, expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST(SftCount, LogDomainBeyondExactLimit) {
  const Sft gm = Sft::golden_mean();
  const std::int64_t n = kExactCountLimit * 4;
  const WordCount wc = count_words(gm, n);
  EXPECT_FALSE(wc.exact.has_value());
  // #Sigma^n = F_{n+2} ~ phi^{n+2} / sqrt 5.
  const double expected = (n + 2) * std::log(oracle::kPhi) - 0.5 * std::log(5.0);
  EXPECT_NEAR(wc.log / expected, 1.0, 1e-12);
}

TEST(SftCount, Subadditive) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const Sft sft(oracle::random_primitive(2 + trial % 3, rng));
    for (int i = 1; i <= 12; ++i)
      for (int j = 1; j <= 12; ++j)
        EXPECT_LE(count_words_exact(sft, i + j), count_words_exact(sft, i) * count_words_exact(sft, j));
  }
}

TEST(SftEntropy, Examples) {
  EXPECT_NEAR(entropy(Sft::full_shift(2)), std::log(2.0), 1e-14);
  EXPECT_NEAR(entropy(Sft::full_shift(3)), std::log(3.0), 1e-14);
  EXPECT_NEAR(entropy(Sft::golden_mean()), std::log(oracle::kPhi), 1e-14);
  EXPECT_NEAR(hausdorff_dimension(Sft::golden_mean()), 0.694242, 1e-6);
}

TEST(SftEntropy, MatchesPowerIterationOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix01 a = oracle::random_primitive(3 + trial % 3, rng);
    EXPECT_NEAR(entropy(Sft(a)), std::log(static_cast<double>(oracle::spectral_radius(a))), 1e-12);
  }
}

TEST(SftEntropy, FiniteEstimatesDominate) {
  const Sft gm = Sft::golden_mean();
  const double h = entropy(gm);
  for (int n = 1; n <= 40; ++n) EXPECT_GE(entropy_estimate(gm, n), h - 1e-15) << n;
  EXPECT_LT(entropy_estimate(gm, 40) - h, 0.05);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const Sft sft(oracle::random_primitive(3, rng));
    for (int n = 1; n <= 40; ++n) EXPECT_GE(entropy_estimate(sft, n), entropy(sft) - 1e-12);
  }
}

TEST(SftGap, Examples) {
  EXPECT_EQ(Sft::full_shift(2).gap(), 0);
  EXPECT_EQ(Sft::golden_mean().gap(), 1);
  EXPECT_EQ(kind_of([] { specification_gap(Matrix01{{1, 0}, {0, 1}}); }), ErrorKind::NotPrimitive);
}

TEST(SftGap, MatchesBooleanPowers) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 5;
    const Matrix01 a = oracle::random_primitive(m, rng, 0.35);
    EXPECT_EQ(Sft(a).gap(), *oracle::primitive_power(a) - 1);
    EXPECT_EQ(primitivity_exponent(a), oracle::primitive_power(a));
  }
}

TEST(SftBridge, Examples) {
  EXPECT_EQ(bridge(Sft::full_shift(2), parse_digits("1"), parse_digits("1")), Word{});
  EXPECT_EQ(bridge(Sft::golden_mean(), parse_digits("1"), parse_digits("1")), parse_digits("0"));
  EXPECT_EQ(bridge(Sft::golden_mean(), parse_digits("0"), parse_digits("0")), parse_digits("0"));
}

TEST(SftBridge, TotalOnRandomPairs) {
  std::mt19937_64 rng(99);
  const Matrix01 three = oracle::random_primitive(3, rng, 0.45);
  for (const Matrix01& a : {kGolden, three}) {
    const Sft sft(a);
    for (int trial = 0; trial < 1000; ++trial) {
      const Word u = oracle::random_admissible(a, 1 + trial % 7, rng);
      const Word v = oracle::random_admissible(a, 1 + trial % 5, rng);
      const Word w = bridge(sft, u, v);
      ASSERT_EQ(static_cast<int>(w.size()), sft.gap());
      EXPECT_TRUE(oracle::admissible(a, concat({u, w, v})));
    }
  }
}

TEST(SftBridge, LexMinimalExhaustive) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 15; ++trial) {
    const Matrix01 a = oracle::random_primitive(3, rng, 0.4);
    const Sft sft(a);
    if (sft.gap() > 2) continue;
    ++checked;
    for (int s = 0; s < 3; ++s)
      for (int t = 0; t < 3; ++t) {
        const Word u{static_cast<Symbol>(s)}, v{static_cast<Symbol>(t)};
        EXPECT_EQ(bridge(sft, u, v), *oracle::first_bridge(a, u, v, sft.gap()));
      }
  }
  EXPECT_GT(checked, 5);
}

TEST(SftBridge, LeastExtensionIsAdmissible) {
  const Sft gm = Sft::golden_mean();
  const Word w = least_extension(gm, 1, 5);
  EXPECT_EQ(w, parse_digits("00000"));
  EXPECT_TRUE(is_admissible(gm, concat({parse_digits("1"), w})));
}

TEST(SftCylinder, DiameterExamples) {
  const CylinderDiameter full = cylinder_diameter(Sft::full_shift(2), parse_digits("0110"));
  EXPECT_EQ(full.exponent, 5);
  EXPECT_DOUBLE_EQ(full.value(), std::ldexp(1.0, -5));
  EXPECT_EQ(cylinder_diameter(Sft::golden_mean(), parse_digits("0101")).exponent, 6);
  EXPECT_EQ(cylinder_diameter(Sft::golden_mean(), parse_digits("0100")).exponent, 5);
}

TEST(SftCylinder, DiameterBoundsAllCylinders) {
  std::mt19937_64 rng(4);
  const Matrix01 three = oracle::random_primitive(3, rng, 0.4);
  for (const Matrix01& a : {kGolden, three}) {
    const Sft sft(a);
    const int bound = diameter_offset_bound(sft);
    for (int n = 1; n <= 10; ++n) {
      if (static_cast<double>(oracle::enumerate(a, n).size()) > 60000) break;
      for (const Word& w : oracle::enumerate(a, n)) {
        const CylinderDiameter d = cylinder_diameter(sft, w);
        EXPECT_EQ(d.branch_offset, oracle::branch_offset(a, w.back()));
        EXPECT_GE(d.exponent, n + 1);
        EXPECT_LE(d.exponent, n + bound);
      }
    }
  }
}

TEST(SftAdmissible, Examples) {
  const Sft gm = Sft::golden_mean();
  EXPECT_TRUE(is_admissible(gm, parse_digits("0101")));
  EXPECT_FALSE(is_admissible(gm, parse_digits("0110")));
  EXPECT_TRUE(is_admissible(gm, Word{}));
  EXPECT_TRUE(is_admissible(gm, parse_digits("1")));
  EXPECT_EQ(kind_of([&] { is_admissible(gm, parse_digits("012")); }), ErrorKind::SymbolOutOfRange);
}

TEST(SftMarker, SmallestNonzeroLeadingToZero) {
  EXPECT_EQ(marker_symbol(Sft::golden_mean()), 1);
  EXPECT_EQ(marker_symbol(Sft(Matrix01{{1, 1, 0}, {0, 0, 1}, {1, 0, 1}})), 2);
}

TEST(SftTransfer, NormSandwich) {
  for (const Sft& sft : {Sft::golden_mean(), Sft(Matrix01{{1, 1, 0}, {0, 0, 1}, {1, 0, 1}})}) {
    const int gap = sft.gap();
    for (int n = gap + 1; n <= 20; ++n) {
      const mpz_class norm = transfer_norm(sft, n);
      EXPECT_GE(norm, count_words_exact(sft, n - gap));
      EXPECT_LE(norm, count_words_exact(sft, n + 1));
    }
  }
}

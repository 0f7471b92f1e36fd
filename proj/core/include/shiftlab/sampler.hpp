#pragma once

#include <cstdint>
#include <vector>

#include "shiftlab/parry.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

/// Draws words from the stationary chain of a ParryMeasure. Transition
/// probabilities are converted to 64-bit thresholds once; a state with a
/// single successor consumes no randomness. On a uniform full shift with
/// 2^k symbols each 64-bit draw yields 64/k symbols.
class OrbitSampler {
 public:
  explicit OrbitSampler(const ParryMeasure& measure);

  int alphabet_size() const noexcept { return m_; }

  class Stream {
   public:
    Stream(const OrbitSampler& sampler, std::uint64_t seed);
    Symbol next();
    std::int64_t position() const noexcept { return position_; }

   private:
    const OrbitSampler* s_;
    SplitMix64 rng_;
    int state_ = -1;
    std::int64_t position_ = 0;
    std::uint64_t bits_ = 0;
    int bits_left_ = 0;
  };

  Stream stream(std::uint64_t seed) const { return Stream(*this, seed); }
  Word sample(std::uint64_t seed, std::int64_t length) const;

 private:
  struct Row {
    std::vector<Symbol> symbols;
    std::vector<std::uint64_t> thresholds;  // last entry unused: catch-all
  };
  static Row make_row(const std::vector<double>& probabilities);
  static Symbol pick(const Row& row, std::uint64_t u);

  int m_ = 0;
  Row initial_;
  std::vector<Row> rows_;
  int uniform_bits_ = 0;  // > 0 on a uniform full shift with 2^k symbols
};

/// Convenience wrapper: OrbitSampler(measure).sample(seed, length).
Word sample_orbit(const ParryMeasure& measure, std::uint64_t seed, std::int64_t length);

}  // namespace shiftlab

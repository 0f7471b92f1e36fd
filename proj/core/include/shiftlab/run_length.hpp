#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shiftlab/sampler.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

/// l_n = length of the zero run starting at position n + 1 (positions are
/// 1-based) and L_N = max_{n <= N} l_n, for 1 <= n, N <= T - 1. A run that
/// reaches the end of the word is censored: its value is only a lower bound.
/// L_N is censored as soon as any l_n with n <= N is.
class RunLengths {
 public:
  std::int64_t word_length() const noexcept { return t_; }
  std::int64_t max_index() const noexcept { return t_ - 1; }

  std::int64_t l(std::int64_t n) const;
  bool l_censored(std::int64_t n) const;
  std::int64_t L(std::int64_t n) const;
  bool L_censored(std::int64_t n) const;
  /// Smallest n with l_n censored, or T when none is.
  std::int64_t first_censored() const noexcept { return first_censored_; }

 private:
  friend RunLengths run_lengths(WordView w);
  std::int64_t t_ = 0;
  std::int64_t first_censored_ = 0;
  std::vector<std::int64_t> l_;  // index n - 1
  std::vector<std::int64_t> prefix_max_;
};

/// Throws WordTooShort for words shorter than 2.
RunLengths run_lengths(WordView w);

struct CheckpointValue {
  std::int64_t n = 0;
  std::int64_t longest = 0;  // L_n, a lower bound when censored
  bool censored = false;
};

/// L_N at sorted checkpoints computed while symbols are drawn, without
/// storing the word. Reads until every checkpoint is settled (the run that
/// covers it has ended) or `max_length` symbols have been read.
std::vector<CheckpointValue> streaming_longest_runs(OrbitSampler::Stream& source,
                                                    std::span<const std::int64_t> checkpoints,
                                                    std::int64_t max_length);

}  // namespace shiftlab

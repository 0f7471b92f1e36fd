#include "shiftlab/run_length.hpp"

#include <algorithm>
#include <string>

#include "shiftlab/error.hpp"

namespace shiftlab {
namespace {

void check_index(std::int64_t n, std::int64_t max_index) {
  if (n < 1 || n > max_index) {
    fail(ErrorKind::InvalidParameters,
         "index " + std::to_string(n) + " outside 1.." + std::to_string(max_index));
  }
}

}  // namespace

std::int64_t RunLengths::l(std::int64_t n) const {
  check_index(n, max_index());
  return l_[static_cast<std::size_t>(n - 1)];
}

bool RunLengths::l_censored(std::int64_t n) const {
  check_index(n, max_index());
  return n >= first_censored_;
}

std::int64_t RunLengths::L(std::int64_t n) const {
  check_index(n, max_index());
  return prefix_max_[static_cast<std::size_t>(n - 1)];
}

bool RunLengths::L_censored(std::int64_t n) const { return l_censored(n); }

RunLengths run_lengths(WordView w) {
  if (w.size() < 2) fail(ErrorKind::WordTooShort, "run lengths need a word of length >= 2");
  RunLengths out;
  out.t_ = static_cast<std::int64_t>(w.size());
  const std::int64_t t = out.t_;
  out.l_.resize(static_cast<std::size_t>(t - 1));
  // zeros = length of the zero run starting at position p (1-based), built backwards.
  std::int64_t zeros = 0;
  for (std::int64_t p = t; p >= 2; --p) {
    zeros = w[static_cast<std::size_t>(p - 1)] == 0 ? zeros + 1 : 0;
    out.l_[static_cast<std::size_t>(p - 2)] = zeros;
  }
  // Once the final run reaches the end every later l_n is censored too.
  out.first_censored_ = t;
  for (std::int64_t n = t - 1; n >= 1 && out.l_[static_cast<std::size_t>(n - 1)] == t - n; --n) {
    out.first_censored_ = n;
  }
  out.prefix_max_.resize(out.l_.size());
  std::int64_t best = 0;
  for (std::size_t i = 0; i < out.l_.size(); ++i) {
    best = std::max(best, out.l_[i]);
    out.prefix_max_[i] = best;
  }
  return out;
}

std::vector<CheckpointValue> streaming_longest_runs(OrbitSampler::Stream& source,
                                                    std::span<const std::int64_t> checkpoints,
                                                    std::int64_t max_length) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    fail(ErrorKind::InvalidParameters, "checkpoints must be sorted");
  }
  std::vector<CheckpointValue> out(checkpoints.size());
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1) fail(ErrorKind::InvalidParameters, "checkpoints must be >= 1");
    out[i].n = checkpoints[i];
  }
  // A zero run over positions [s, e] gives l_n = e - n for n in [max(s - 1, 1), e - 1],
  // so it counts toward L_N for every N >= s - 1. L_N is settled at the first
  // nonzero symbol at a position > N: every run that counts for N has ended.
  std::size_t pending = 0;
  std::int64_t best = 0;
  std::int64_t run_start = 0;  // 0 when not inside a run
  std::int64_t p = 0;
  while (pending < out.size() && p < max_length) {
    ++p;
    if (source.next() == 0) {
      if (run_start == 0) run_start = p;
      continue;
    }
    if (run_start != 0) {
      best = std::max(best, p - 1 - std::max<std::int64_t>(run_start - 1, 1));
      run_start = 0;
    }
    while (pending < out.size() && out[pending].n < p) out[pending++].longest = best;
  }
  if (pending < out.size()) {
    const std::int64_t open = run_start == 0 ? 0 : p - std::max<std::int64_t>(run_start - 1, 1);
    for (; pending < out.size(); ++pending) {
      out[pending].longest = std::max(best, open);
      out[pending].censored = true;
    }
  }
  return out;
}

}  // namespace shiftlab

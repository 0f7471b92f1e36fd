#include "shiftlab/hitting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "shiftlab/error.hpp"

namespace shiftlab {

SurvivalReport ea_survives(const RunLengths& runs, const TargetFunction& psi, std::int64_t n0, std::int64_t n1,
                           CensorMode mode) {
  if (n0 < 1 || n1 < n0) fail(ErrorKind::InvalidParameters, "need 1 <= N0 <= N1");
  if (n1 > runs.max_index()) {
    fail(ErrorKind::InsufficientWordLength, "window ends at " + std::to_string(n1) + " but the word only determines L_N up to N = " +
                                                std::to_string(runs.max_index()));
  }
  SurvivalReport report;
  report.n0 = n0;
  report.n1 = n1;
  for (std::int64_t n = n0; n <= n1; ++n) {
    const double threshold = psi.phi(static_cast<double>(n)) - 1.0;
    const auto longest = static_cast<double>(runs.L(n));
    if (runs.L_censored(n)) {
      report.censored = true;
      // The true value is >= longest; only a failing lower bound is ambiguous.
      if (longest > threshold || mode == CensorMode::Optimistic) continue;
      fail(ErrorKind::InsufficientWordLength,
           "L_N is censored at N = " + std::to_string(n) + " and its lower bound does not decide the test");
    }
    if (!(longest > threshold)) {
      report.survived = false;
      report.first_failure = n;
      return report;
    }
  }
  return report;
}

SurvivalReport ea_survives(WordView w, const TargetFunction& psi, std::int64_t n0, std::int64_t n1, CensorMode mode) {
  return ea_survives(run_lengths(w), psi, n0, n1, mode);
}

std::int64_t hitting_depth(std::int64_t n, double entropy) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "hitting depth needs n >= 1");
  // The nudge keeps exact ratios such as ln 4 / ln 2 from rounding down.
  return static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(n)) / entropy + 1e-12)) + 1;
}

HittingCounts hitting_counts(WordView w, const Sft& sft, const ParryMeasure& measure, std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "N must be >= 1");
  if (measure.m != sft.alphabet_size()) fail(ErrorKind::InvalidParameters, "measure and Sft disagree on m");
  const double h = measure.entropy;
  const std::int64_t need = n + hitting_depth(n, h) + 1;
  if (static_cast<std::int64_t>(w.size()) < need) {
    fail(ErrorKind::InsufficientWordLength,
         "hitting counts up to N = " + std::to_string(n) + " need a word of length >= " + std::to_string(need));
  }
  for (Symbol s : w) {
    if (s >= measure.m) fail(ErrorKind::SymbolOutOfRange, "symbol out of range");
  }
  // zeros[p] = zero run starting at position p + 1 (0-based p).
  std::vector<std::int64_t> zeros(w.size() + 1, 0);
  for (std::size_t p = w.size(); p-- > 0;) zeros[p] = w[p] == 0 ? zeros[p + 1] + 1 : 0;

  HittingCounts out;
  const double log_pi0 = std::log(measure.pi[0]);
  const double log_p00 = std::log(measure.trans[0][0]);
  std::int64_t depth = 0;
  double mass = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const std::int64_t k = hitting_depth(i, h);
    if (k != depth) {
      depth = k;
      mass = std::exp(log_pi0 + static_cast<double>(k - 1) * log_p00);
    }
    out.f += mass;
    if (zeros[static_cast<std::size_t>(i)] >= k) ++out.r;
  }
  return out;
}

RatioExtremes liminf_limsup_estimate(const RunLengths& runs, const TargetFunction& psi,
                                     std::span<const std::int64_t> checkpoints, std::size_t burn_in) {
  RatioExtremes out;
  out.liminf = std::numeric_limits<double>::infinity();
  out.limsup = -std::numeric_limits<double>::infinity();
  for (std::size_t i = burn_in; i < checkpoints.size(); ++i) {
    const std::int64_t n = checkpoints[i];
    const double phi = psi.phi(static_cast<double>(n));
    if (!(phi > 0.0)) fail(ErrorKind::InvalidParameters, "Phi(N) must be positive at every checkpoint");
    const double ratio = static_cast<double>(runs.L(n)) / phi;
    if (ratio < out.liminf) {
      out.liminf = ratio;
      out.argmin = n;
    }
    if (ratio > out.limsup) {
      out.limsup = ratio;
      out.argmax = n;
    }
    ++out.used;
  }
  if (out.used == 0) fail(ErrorKind::InvalidParameters, "no checkpoints beyond the burn-in");
  return out;
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t first, std::int64_t last, double ratio) {
  if (first < 1 || last < first || !(ratio > 1.0)) {
    fail(ErrorKind::InvalidParameters, "geometric checkpoints need 1 <= first <= last and ratio > 1");
  }
  std::vector<std::int64_t> out;
  for (double x = static_cast<double>(first); x < static_cast<double>(last); x *= ratio) {
    const auto n = static_cast<std::int64_t>(std::llround(x));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.empty() || out.back() != last) out.push_back(last);
  return out;
}

}  // namespace shiftlab

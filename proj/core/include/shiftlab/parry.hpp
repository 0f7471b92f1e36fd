#pragma once

#include <cstdint>
#include <vector>

#include "shiftlab/perron.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

/// Measure of maximal entropy as a stationary Markov chain.
struct ParryMeasure {
  int m = 0;
  std::vector<double> pi;
  std::vector<std::vector<double>> trans;  // zero exactly where the Sft forbids
  double lambda = 0.0;
  double theta = 0.0;
  double entropy = 0.0;
};

ParryMeasure parry_measure(const Sft& sft);
ParryMeasure parry_measure(const Sft& sft, const PerronData& data);

/// mu(I(w)); 0 for inadmissible words. Empty word has measure 1.
double cylinder_measure(const ParryMeasure& measure, WordView w);
/// log mu(I(w)), -inf for inadmissible words; safe for long words.
double log_cylinder_measure(const ParryMeasure& measure, WordView w);

struct GibbsBounds {
  double min = 0.0;  // min over admissible w of mu(I(w)) * lambda^n
  double max = 0.0;
  std::uint64_t words = 0;
  double gamma() const { return max > 1.0 / min ? max : 1.0 / min; }
};

inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 24;

/// Exhaustive pass over admissible words of length n. Throws BudgetExceeded
/// if the number of words exceeds the budget.
GibbsBounds gibbs_ratio_bounds(const ParryMeasure& measure, int n,
                               std::uint64_t budget = kDefaultWordBudget);

/// mu(I(e) and sigma^-n I(f)) - mu(I(e)) mu(I(f)). Throws WindowOverlap when
/// n < |e|.
double correlation(const ParryMeasure& measure, WordView e, WordView f, std::int64_t n);

/// Least-squares slope of ln |correlation(e, f, n)| against n over
/// [n_first, n_last], skipping exact zeros; compare with ln theta.
double fitted_decay_rate(const ParryMeasure& measure, WordView e, WordView f, std::int64_t n_first,
                         std::int64_t n_last);

/// Largest |sum_j trans[i][j] - 1| and largest |(pi trans - pi)_j|.
double row_sum_error(const ParryMeasure& measure);
double stationarity_error(const ParryMeasure& measure);

}  // namespace shiftlab

#include "shiftlab/parry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "shiftlab/error.hpp"

namespace shiftlab {
namespace {

using Dense = std::vector<std::vector<double>>;

Dense multiply(const Dense& x, const Dense& y) {
  const std::size_t m = x.size();
  Dense out(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (x[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

Dense power(Dense base, std::int64_t p) {
  const std::size_t m = base.size();
  Dense result(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) result[i][i] = 1.0;
  while (p > 0) {
    if (p & 1) result = multiply(result, base);
    p >>= 1;
    if (p > 0) base = multiply(base, base);
  }
  return result;
}

void check_symbols(const ParryMeasure& measure, WordView w) {
  for (Symbol s : w) {
    if (s >= measure.m) {
      fail(ErrorKind::SymbolOutOfRange, "symbol " + std::to_string(s) + " >= m = " + std::to_string(measure.m));
    }
  }
}

}  // namespace

ParryMeasure parry_measure(const Sft& sft) { return parry_measure(sft, perron(sft)); }

ParryMeasure parry_measure(const Sft& sft, const PerronData& data) {
  const int m = sft.alphabet_size();
  ParryMeasure out;
  out.m = m;
  out.lambda = data.lambda;
  out.theta = data.theta;
  out.entropy = data.entropy;
  out.pi.resize(static_cast<std::size_t>(m));
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    out.pi[static_cast<std::size_t>(i)] = data.left[static_cast<std::size_t>(i)] * data.right[static_cast<std::size_t>(i)];
    total += out.pi[static_cast<std::size_t>(i)];
  }
  for (double& p : out.pi) p /= total;
  out.trans.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (int i = 0; i < m; ++i) {
    auto& row = out.trans[static_cast<std::size_t>(i)];
    double row_total = 0.0;
    for (int j = 0; j < m; ++j) {
      if (!sft.allowed(i, j)) continue;
      row[static_cast<std::size_t>(j)] =
          data.right[static_cast<std::size_t>(j)] / (data.lambda * data.right[static_cast<std::size_t>(i)]);
      row_total += row[static_cast<std::size_t>(j)];
    }
    for (double& p : row) p /= row_total;
  }
  return out;
}

double cylinder_measure(const ParryMeasure& measure, WordView w) {
  check_symbols(measure, w);
  if (w.empty()) return 1.0;
  double mu = measure.pi[w[0]];
  for (std::size_t i = 1; i < w.size() && mu != 0.0; ++i) mu *= measure.trans[w[i - 1]][w[i]];
  return mu;
}

double log_cylinder_measure(const ParryMeasure& measure, WordView w) {
  check_symbols(measure, w);
  if (w.empty()) return 0.0;
  double log_mu = std::log(measure.pi[w[0]]);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double p = measure.trans[w[i - 1]][w[i]];
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    log_mu += std::log(p);
  }
  return log_mu;
}

GibbsBounds gibbs_ratio_bounds(const ParryMeasure& measure, int n, std::uint64_t budget) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "depth must be >= 1");
  const int m = measure.m;
  // Count admissible words level by level before enumerating.
  std::vector<double> count(static_cast<std::size_t>(m), 1.0);
  for (int step = 1; step < n; ++step) {
    std::vector<double> next(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (measure.trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0.0) {
          next[static_cast<std::size_t>(i)] += count[static_cast<std::size_t>(j)];
        }
      }
    }
    count = std::move(next);
  }
  double total = 0.0;
  for (double c : count) total += c;
  if (total > static_cast<double>(budget)) {
    fail(ErrorKind::BudgetExceeded, "depth " + std::to_string(n) + " has about " + std::to_string(total) +
                                        " words, budget is " + std::to_string(budget));
  }

  GibbsBounds out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = 0.0;
  // Each step multiplies by p_ij * lambda, so the running value is mu * lambda^depth.
  auto visit = [&](auto&& self, int last, int depth, double value) -> void {
    if (depth == n) {
      out.min = std::min(out.min, value);
      out.max = std::max(out.max, value);
      ++out.words;
      return;
    }
    for (int j = 0; j < m; ++j) {
      const double p = measure.trans[static_cast<std::size_t>(last)][static_cast<std::size_t>(j)];
      if (p > 0.0) self(self, j, depth + 1, value * p * measure.lambda);
    }
  };
  for (int s = 0; s < m; ++s) visit(visit, s, 1, measure.pi[static_cast<std::size_t>(s)] * measure.lambda);
  return out;
}

double correlation(const ParryMeasure& measure, WordView e, WordView f, std::int64_t n) {
  if (e.empty() || f.empty()) fail(ErrorKind::InvalidParameters, "correlation windows must be nonempty");
  if (n < static_cast<std::int64_t>(e.size())) {
    fail(ErrorKind::WindowOverlap, "shift n = " + std::to_string(n) + " is smaller than |e| = " + std::to_string(e.size()));
  }
  const double mu_e = cylinder_measure(measure, e);
  const double tail_f = cylinder_measure(measure, f) / measure.pi[f[0]];
  if (mu_e == 0.0 || tail_f == 0.0) return -mu_e * cylinder_measure(measure, f);
  // (P - 1 pi)^k = P^k - 1 pi for k >= 1; the centered form avoids cancellation.
  const auto m = static_cast<std::size_t>(measure.m);
  Dense centered(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) centered[i][j] = measure.trans[i][j] - measure.pi[j];
  }
  const std::int64_t steps = n - static_cast<std::int64_t>(e.size()) + 1;
  const Dense q = power(centered, steps);
  return mu_e * q[e.back()][f[0]] * tail_f;
}

double fitted_decay_rate(const ParryMeasure& measure, WordView e, WordView f, std::int64_t n_first,
                         std::int64_t n_last) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int used = 0;
  for (std::int64_t n = n_first; n <= n_last; ++n) {
    const double c = std::abs(correlation(measure, e, f, n));
    if (c == 0.0) continue;
    const double x = static_cast<double>(n), y = std::log(c);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 2) fail(ErrorKind::InvalidParameters, "fewer than two nonzero correlations to fit");
  return (used * sxy - sx * sy) / (used * sxx - sx * sx);
}

double row_sum_error(const ParryMeasure& measure) {
  double worst = 0.0;
  for (const auto& row : measure.trans) {
    double s = 0.0;
    for (double p : row) s += p;
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double stationarity_error(const ParryMeasure& measure) {
  double worst = 0.0;
  const auto m = static_cast<std::size_t>(measure.m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += measure.pi[i] * measure.trans[i][j];
    worst = std::max(worst, std::abs(s - measure.pi[j]));
  }
  return worst;
}

}  // namespace shiftlab

#include "shiftlab/sft.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "shiftlab/error.hpp"

namespace shiftlab {
namespace {

using BoolMatrix = std::vector<std::uint8_t>;

BoolMatrix bool_product(const BoolMatrix& x, const BoolMatrix& y, int m) {
  BoolMatrix out(static_cast<std::size_t>(m * m), 0);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      if (!x[static_cast<std::size_t>(i * m + k)]) continue;
      for (int j = 0; j < m; ++j) {
        if (y[static_cast<std::size_t>(k * m + j)]) out[static_cast<std::size_t>(i * m + j)] = 1;
      }
    }
  }
  return out;
}

bool all_positive(const BoolMatrix& x) {
  return std::all_of(x.begin(), x.end(), [](std::uint8_t v) { return v != 0; });
}

BoolMatrix flatten(const Matrix01& matrix, int m) {
  BoolMatrix a(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i * m + j)] = matrix[i][j] ? 1 : 0;
  }
  return a;
}

void check_shape(const Matrix01& matrix) {
  const auto m = matrix.size();
  if (m < 2) fail(ErrorKind::InvalidSft, "alphabet size must be at least 2");
  if (m > static_cast<std::size_t>(kMaxAlphabet)) {
    fail(ErrorKind::InvalidSft, "alphabet size exceeds " + std::to_string(kMaxAlphabet));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (matrix[i].size() != m) {
      fail(ErrorKind::InvalidSft, "row " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) +
                                      " entries, expected " + std::to_string(m));
    }
    for (int v : matrix[i]) {
      if (v != 0 && v != 1) fail(ErrorKind::InvalidSft, "entries must be 0 or 1");
    }
  }
}

using MpzMatrix = std::vector<mpz_class>;

MpzMatrix mpz_product(const MpzMatrix& x, const MpzMatrix& y, int m) {
  MpzMatrix out(static_cast<std::size_t>(m * m), 0);
  mpz_class t;
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      const auto& xik = x[static_cast<std::size_t>(i * m + k)];
      if (xik == 0) continue;
      for (int j = 0; j < m; ++j) {
        const auto& ykj = y[static_cast<std::size_t>(k * m + j)];
        if (ykj == 0) continue;
        mpz_addmul(out[static_cast<std::size_t>(i * m + j)].get_mpz_t(), xik.get_mpz_t(), ykj.get_mpz_t());
      }
    }
  }
  return out;
}

MpzMatrix mpz_power(const Sft& sft, std::int64_t p) {
  const int m = sft.alphabet_size();
  MpzMatrix result(static_cast<std::size_t>(m * m), 0);
  for (int i = 0; i < m; ++i) result[static_cast<std::size_t>(i * m + i)] = 1;
  MpzMatrix base(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) base[static_cast<std::size_t>(i * m + j)] = sft.allowed(i, j) ? 1 : 0;
  }
  while (p > 0) {
    if (p & 1) result = mpz_product(result, base, m);
    p >>= 1;
    if (p > 0) base = mpz_product(base, base, m);
  }
  return result;
}

// allowed^p applied to the all-ones vector.
std::vector<mpz_class> row_sums_of_power(const Sft& sft, std::int64_t p) {
  const int m = sft.alphabet_size();
  if (p <= 512) {
    std::vector<mpz_class> c(static_cast<std::size_t>(m), 1), next(static_cast<std::size_t>(m));
    for (std::int64_t step = 0; step < p; ++step) {
      for (int i = 0; i < m; ++i) {
        next[static_cast<std::size_t>(i)] = 0;
        for (int j = 0; j < m; ++j) {
          if (sft.allowed(i, j)) next[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(j)];
        }
      }
      std::swap(c, next);
    }
    return c;
  }
  const auto power = mpz_power(sft, p);
  std::vector<mpz_class> sums(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) sums[static_cast<std::size_t>(i)] += power[static_cast<std::size_t>(i * m + j)];
  }
  return sums;
}

double mpz_log(const mpz_class& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

// log(1^T allowed^p 1) with per-step renormalization.
double log_total_power_float(const Sft& sft, std::int64_t p) {
  const int m = sft.alphabet_size();
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat base(m, m), result = Mat::Identity(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) base(i, j) = sft.allowed(i, j) ? 1.0L : 0.0L;
  }
  long double log_base = 0.0L, log_result = 0.0L;
  while (p > 0) {
    if (p & 1) {
      result = result * base;
      log_result += log_base;
      const long double s = result.maxCoeff();
      result /= s;
      log_result += std::log(s);
    }
    p >>= 1;
    if (p > 0) {
      base = base * base;
      log_base *= 2;
      const long double s = base.maxCoeff();
      base /= s;
      log_base += std::log(s);
    }
  }
  return static_cast<double>(log_result + std::log(result.sum()));
}

}  // namespace

Sft::Sft(const Matrix01& allowed) {
  check_shape(allowed);
  m_ = static_cast<int>(allowed.size());
  a_ = flatten(allowed, m_);
  for (int i = 0; i < m_; ++i) {
    bool row = false, col = false;
    for (int j = 0; j < m_; ++j) {
      row = row || this->allowed(i, j);
      col = col || this->allowed(j, i);
    }
    if (!row) fail(ErrorKind::InvalidSft, "symbol " + std::to_string(i) + " has no successor (dead row)");
    if (!col) fail(ErrorKind::InvalidSft, "symbol " + std::to_string(i) + " has no predecessor (dead column)");
  }
  if (!this->allowed(0, 0)) fail(ErrorKind::InvalidSft, "allowed[0][0] must be 1 so that 0^inf is a point");
  const auto exponent = primitivity_exponent(allowed);
  if (!exponent) {
    fail(ErrorKind::NotPrimitive, "no power up to m^2 of the transition matrix is entrywise positive");
  }
  gap_ = *exponent - 1;
  BoolMatrix identity(static_cast<std::size_t>(m_ * m_), 0);
  for (int i = 0; i < m_; ++i) identity[static_cast<std::size_t>(i * m_ + i)] = 1;
  reach_.push_back(identity);
  for (int j = 1; j <= gap_ + 1; ++j) reach_.push_back(bool_product(reach_.back(), a_, m_));
}

Sft Sft::full_shift(int m) {
  return Sft(Matrix01(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 1)));
}

Sft Sft::golden_mean() { return Sft(Matrix01{{1, 1}, {1, 0}}); }

Matrix01 Sft::rows() const {
  Matrix01 out(static_cast<std::size_t>(m_), std::vector<int>(static_cast<std::size_t>(m_)));
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) out[i][j] = allowed(i, j) ? 1 : 0;
  }
  return out;
}

int Sft::out_degree(int i) const noexcept {
  int d = 0;
  for (int j = 0; j < m_; ++j) d += allowed(i, j) ? 1 : 0;
  return d;
}

bool Sft::reachable(int steps, int s, int t) const {
  if (steps < 0 || steps > gap_ + 1) fail(ErrorKind::InvalidParameters, "reachability table covers 0..gap+1 steps");
  return reach_[static_cast<std::size_t>(steps)][static_cast<std::size_t>(s * m_ + t)] != 0;
}

std::optional<int> primitivity_exponent(const Matrix01& matrix) {
  check_shape(matrix);
  const int m = static_cast<int>(matrix.size());
  const BoolMatrix a = flatten(matrix, m);
  BoolMatrix power = a;
  for (int p = 1; p <= m * m; ++p) {
    if (all_positive(power)) return p;
    power = bool_product(power, a, m);
  }
  return std::nullopt;
}

int specification_gap(const Matrix01& matrix) {
  const auto exponent = primitivity_exponent(matrix);
  if (!exponent) fail(ErrorKind::NotPrimitive, "no power up to m^2 of the transition matrix is entrywise positive");
  return *exponent - 1;
}

int specification_gap(const Sft& sft) { return specification_gap(sft.rows()); }

WordCount count_words(const Sft& sft, std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "word length must be >= 1");
  WordCount out;
  if (n <= kExactCountLimit) {
    out.exact = count_words_exact(sft, n);
    out.log = mpz_log(*out.exact);
  } else {
    out.log = log_total_power_float(sft, n - 1);
  }
  return out;
}

mpz_class count_words_exact(const Sft& sft, std::int64_t n) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "word length must be >= 1");
  mpz_class total = 0;
  for (const auto& s : row_sums_of_power(sft, n - 1)) total += s;
  return total;
}

double log_count_words(const Sft& sft, std::int64_t n) { return count_words(sft, n).log; }

mpz_class transfer_norm(const Sft& sft, std::int64_t n) {
  if (n < 0) fail(ErrorKind::InvalidParameters, "power must be >= 0");
  const auto sums = row_sums_of_power(sft, n);
  return *std::max_element(sums.begin(), sums.end());
}

double entropy(const Sft& sft) {
  const int m = sft.alphabet_size();
  // Constant row sums (full shifts among them): the spectral radius is exact.
  std::vector<int> sums(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) sums[static_cast<std::size_t>(i)] += sft.allowed(i, j) ? 1 : 0;
  }
  if (std::all_of(sums.begin(), sums.end(), [&](int s) { return s == sums[0]; })) {
    return std::log(static_cast<double>(sums[0]));
  }
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = sft.allowed(i, j) ? 1.0 : 0.0;
  }
  const Eigen::VectorXcd values = a.eigenvalues();
  double rho = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) rho = std::max(rho, std::abs(values[i]));
  return std::log(rho);
}

double entropy_estimate(const Sft& sft, std::int64_t n) {
  return log_count_words(sft, n) / static_cast<double>(n);
}

double hausdorff_dimension(const Sft& sft) {
  return entropy(sft) / std::log(static_cast<double>(sft.alphabet_size()));
}

bool is_admissible(const Sft& sft, WordView w) {
  const int m = sft.alphabet_size();
  for (Symbol s : w) {
    if (s >= m) fail(ErrorKind::SymbolOutOfRange, "symbol " + std::to_string(s) + " >= m = " + std::to_string(m));
  }
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!sft.allowed(w[i - 1], w[i])) return false;
  }
  return true;
}

Word bridge_symbols(const Sft& sft, int from, int to) {
  const int m = sft.alphabet_size();
  if (from < 0 || from >= m || to < 0 || to >= m) fail(ErrorKind::SymbolOutOfRange, "bridge endpoint out of range");
  const int gap = sft.gap();
  Word w;
  w.reserve(static_cast<std::size_t>(gap));
  int prev = from;
  for (int i = 1; i <= gap; ++i) {
    int chosen = -1;
    for (int t = 0; t < m && chosen < 0; ++t) {
      if (sft.allowed(prev, t) && sft.reachable(gap - i + 1, t, to)) chosen = t;
    }
    if (chosen < 0) fail(ErrorKind::InadmissibleWord, "no bridge exists");
    w.push_back(static_cast<Symbol>(chosen));
    prev = chosen;
  }
  if (!sft.allowed(prev, to)) fail(ErrorKind::InadmissibleWord, "no bridge exists");
  return w;
}

Word bridge(const Sft& sft, WordView u, WordView v) {
  if (u.empty() || v.empty()) fail(ErrorKind::InvalidParameters, "bridge endpoints must be nonempty words");
  if (!is_admissible(sft, u) || !is_admissible(sft, v)) {
    fail(ErrorKind::InadmissibleWord, "bridge endpoints must be admissible");
  }
  return bridge_symbols(sft, u.back(), v.front());
}

Word least_extension(const Sft& sft, int from, std::int64_t length) {
  Word w;
  w.reserve(static_cast<std::size_t>(std::max<std::int64_t>(length, 0)));
  int prev = from;
  for (std::int64_t i = 0; i < length; ++i) {
    int t = 0;
    while (!sft.allowed(prev, t)) ++t;
    w.push_back(static_cast<Symbol>(t));
    prev = t;
  }
  return w;
}

double CylinderDiameter::value() const { return std::exp(log_value()); }

double CylinderDiameter::log_value() const {
  return -static_cast<double>(exponent) * std::log(static_cast<double>(base));
}

CylinderDiameter cylinder_diameter(const Sft& sft, WordView base) {
  if (base.empty()) fail(ErrorKind::InvalidParameters, "cylinder depth must be >= 1");
  if (!is_admissible(sft, base)) fail(ErrorKind::InadmissibleWord, "cylinder base must be admissible");
  const int m = sft.alphabet_size();
  int current = base.back();
  int offset = 1;
  // Follow the forced continuation until some symbol has two successors.
  while (sft.out_degree(current) == 1) {
    if (offset > m * m + 1) fail(ErrorKind::InvalidSft, "continuation never branches");
    int next = 0;
    while (!sft.allowed(current, next)) ++next;
    current = next;
    ++offset;
  }
  CylinderDiameter d;
  d.base = m;
  d.branch_offset = offset;
  d.exponent = static_cast<std::int64_t>(base.size()) + offset;
  return d;
}

int diameter_offset_bound(const Sft& sft) {
  const int m = sft.alphabet_size();
  const int gap = sft.gap();
  mpz_class threshold;
  mpz_ui_pow_ui(threshold.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(gap));
  for (std::int64_t k = 1;; ++k) {
    if (count_words_exact(sft, k) > threshold) return gap + static_cast<int>(k);
  }
}

int marker_symbol(const Sft& sft) {
  for (int s = 1; s < sft.alphabet_size(); ++s) {
    if (sft.allowed(s, 0)) return s;
  }
  fail(ErrorKind::InvalidSft, "no nonzero symbol can precede 0");
}

}  // namespace shiftlab

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftlab/word.hpp"

namespace shiftlab {

using Matrix01 = std::vector<std::vector<int>>;

/// One-sided subshift of finite type on {0, ..., m-1}. Symbol j may follow
/// symbol i iff allowed(i, j). Construction rejects matrices with dead
/// symbols, matrices that are not primitive, and matrices excluding 0^inf.
/// Instances are immutable.
class Sft {
 public:
  explicit Sft(const Matrix01& allowed);

  static Sft full_shift(int m);
  /// [[1,1],[1,0]]: no two consecutive 1s.
  static Sft golden_mean();

  int alphabet_size() const noexcept { return m_; }
  bool allowed(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i * m_ + j)] != 0; }
  Matrix01 rows() const;
  int out_degree(int i) const noexcept;

  /// Least M >= 0 with allowed^(M+1) entrywise positive.
  int gap() const noexcept { return gap_; }

  /// True iff allowed^j has a positive (s, t) entry; j <= gap() + 1.
  bool reachable(int steps, int s, int t) const;

  bool operator==(const Sft& other) const = default;

 private:
  int m_ = 0;
  std::vector<std::uint8_t> a_;
  int gap_ = 0;
  // reach_[j] = support of allowed^j, j = 0 .. gap_ + 1
  std::vector<std::vector<std::uint8_t>> reach_;
};

/// Least p <= m^2 with matrix^p > 0, or nullopt (the matrix is not primitive).
std::optional<int> primitivity_exponent(const Matrix01& matrix);

/// Specification gap of a raw 0/1 matrix; throws NotPrimitive.
int specification_gap(const Matrix01& matrix);
int specification_gap(const Sft& sft);

/// Exact counts are kept up to this length; longer lengths are log-domain only.
inline constexpr std::int64_t kExactCountLimit = std::int64_t{1} << 20;

struct WordCount {
  std::optional<mpz_class> exact;  // present when n <= kExactCountLimit
  double log = 0.0;                // natural log of the count
};

/// Number of admissible words of length n (sum of the entries of allowed^(n-1)).
WordCount count_words(const Sft& sft, std::int64_t n);
mpz_class count_words_exact(const Sft& sft, std::int64_t n);
double log_count_words(const Sft& sft, std::int64_t n);

/// Max row sum of allowed^n, i.e. the sup norm of the transfer operator applied
/// n times to the constant function 1.
mpz_class transfer_norm(const Sft& sft, std::int64_t n);

/// Natural log of the spectral radius of allowed.
double entropy(const Sft& sft);
/// log(#words of length n) / n; never below entropy().
double entropy_estimate(const Sft& sft, std::int64_t n);
/// entropy / log m.
double hausdorff_dimension(const Sft& sft);

bool is_admissible(const Sft& sft, WordView w);

/// Lexicographically least w of length gap() with u w v admissible.
Word bridge(const Sft& sft, WordView u, WordView v);
/// Same, given only the boundary symbols.
Word bridge_symbols(const Sft& sft, int from, int to);
/// Lexicographically least admissible continuation of the given length.
Word least_extension(const Sft& sft, int from, std::int64_t length);

/// Diameter m^-(n + offset) of a depth-n cylinder, offset >= 1 being the
/// first position after the base where two points of the cylinder can differ.
struct CylinderDiameter {
  int base = 2;
  std::int64_t exponent = 1;
  int branch_offset = 1;
  double value() const;
  double log_value() const;
};

CylinderDiameter cylinder_diameter(const Sft& sft, WordView base);

/// M + K with K least such that #words(K) > m^M; every cylinder of depth n
/// has diameter at least m^-(n + bound).
int diameter_offset_bound(const Sft& sft);

/// Smallest nonzero symbol that may be followed directly by 0.
int marker_symbol(const Sft& sft);

}  // namespace shiftlab

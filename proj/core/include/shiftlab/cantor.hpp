#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "shiftlab/sft.hpp"
#include "shiftlab/target.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

/// SECTION4: level sets for psi_0 (Phi(N) = N) with liminf a and limsup b.
/// CASE2..CASE6: Phi-driven constructions for slowly shrinking targets
/// (tau = 0) with a P-dependent block structure:
///   CASE2  0 < a <= b < inf      CASE3  0 < a < b = inf
///   CASE4  0 = a < b < inf       CASE5  a = 0, b = inf     CASE6  a = b = 0
enum class Variant { Section4, Case2, Case3, Case4, Case5, Case6 };

std::string_view to_string(Variant v) noexcept;
Variant variant_from_string(std::string_view name);

struct CantorParams {
  Variant variant = Variant::Section4;
  double a = 0.25;
  double b = 1.0;
  int p = 3;                           // block multiplier, >= 3 (CASE variants)
  std::optional<int> k0;               // SECTION4 offset; computed when absent
  std::int64_t n1 = 24;                // SECTION4 first length when a = 0
  std::optional<TargetFunction> psi;   // required by the CASE variants
  std::int64_t depth_budget = 1'000'000;
};

/// One construction level k >= 1.
struct Level {
  int k = 0;
  std::int64_t n = 0;            // n_k
  std::int64_t m_or_d = 0;       // m_k (SECTION4) or d_k
  std::int64_t t_or_l = 0;       // t_k or l_k: number of free inner blocks
  std::int64_t r = 0;            // r_k (CASE variants)
  std::int64_t free_length = 0;  // length of each inner free block
  std::int64_t tail_length = 0;  // |v_k|; free in SECTION4, fixed in the CASE variants
  std::int64_t end = 0;          // length of every word of G_k (N_k or n_k)
  std::int64_t plateau_end = 0;  // the mass stays at its level-k value up to here
  double log_count = 0.0;        // ln #W_k
  double log_mass = 0.0;         // -sum_{i <= k} ln #W_i
};

struct SampledPoint {
  Word word;
  std::vector<double> log_mass;  // log_mass[N - 1] = ln lambda(I_N(point))
};

class CantorConstruction {
 public:
  /// Throws EmptyRegime, InvalidParameters or SeedSearchFailure.
  static CantorConstruction build(const Sft& sft, const CantorParams& params);

  const CantorParams& params() const noexcept { return params_; }
  const Sft& sft() const noexcept { return sft_; }
  int gap() const noexcept { return gap_; }
  int marker() const noexcept { return marker_; }
  int k0() const noexcept { return k0_; }
  /// Length of the initial zero block: n_1 (SECTION4) or n_0.
  std::int64_t initial_length() const noexcept { return initial_; }
  /// d_0 for the CASE variants, 0 otherwise.
  std::int64_t initial_d() const noexcept { return d0_; }

  int depth() const noexcept { return static_cast<int>(levels_.size()); }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  /// Throws DepthExceeded outside 1..depth().
  const Level& level(int k) const;

  /// ln lambda(I_{end_k}); 0 for k = 0.
  double log_mass(int k) const;
  /// -log_mass(k) / (end_k ln m).
  double local_dimension(int k) const;
  /// -log_mass(k) / (plateau_end_k ln m): the smallest value of the local
  /// dimension curve on the level-k plateau.
  double plateau_local_dimension(int k) const;
  /// Lower bound the construction is designed to reach, in absolute units.
  double target_dimension() const;

  /// Prefix of a point of the constructed set; length <= level(depth()).end.
  Word sample_point(std::uint64_t seed, std::int64_t length) const;
  /// Same point together with the exact mass of each prefix cylinder.
  SampledPoint sample_with_mass(std::uint64_t seed, std::int64_t length) const;

  /// Phi used for the ratio L_N / Phi(N): N for SECTION4, psi otherwise.
  TargetFunction ratio_target() const;
  /// Indices where L_N / Phi(N) approaches a and b respectively, for levels
  /// 1..depth().
  std::vector<std::int64_t> liminf_checkpoints() const;
  std::vector<std::int64_t> limsup_checkpoints() const;

 private:
  CantorConstruction(const Sft& sft, const CantorParams& params);
  void build_section4();
  void build_case();

  Sft sft_;
  CantorParams params_;
  int gap_ = 0;
  int marker_ = 1;
  int k0_ = 0;
  std::int64_t initial_ = 0;
  std::int64_t d0_ = 0;
  std::vector<Level> levels_;
};

}  // namespace shiftlab

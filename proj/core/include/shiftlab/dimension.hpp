#pragma once

#include <limits>
#include <optional>
#include <string_view>

#include "shiftlab/sft.hpp"

namespace shiftlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// FORMULA: the closed form applies (its value may be 0).
/// EMPTY: the set is empty. COUNTABLE: countable, dimension 0.
/// FULL: dimension equals dim_H of the whole shift.
enum class RegimeTag { Formula, Empty, Countable, Full };

std::string_view to_string(RegimeTag tag) noexcept;

struct DimensionValue {
  RegimeTag tag = RegimeTag::Formula;
  double relative = 0.0;  // multiple of dim_H of the shift; 0 for EMPTY
  double absolute = 0.0;  // relative * dim_H
};

/// Dimension of the eventually-always-hitting set for targets with
/// exponential rate tau in [0, inf].
DimensionValue dim_hea(double tau, double dim_h);
DimensionValue dim_hea(double tau, const Sft& sft);

/// Dimension of the level set with liminf >= a and limsup = b of
/// L_N / Phi(N) for targets with rate tau; a, b, tau may be +inf.
/// Throws InvalidPair when a > b.
DimensionValue dim_level_set(double a, double b, double tau, double dim_h);
DimensionValue dim_level_set(double a, double b, double tau, const Sft& sft);

/// Relative closed form (b(1 - tau a) - a) / ((1 + tau b)(b - a)) with the
/// a = b = 0 convention; no regime checks.
double level_set_formula(double a, double b, double tau);

struct NumericSup {
  double value = 0.0;
  double argmax = 0.0;
};

/// sup over b in [lo, hi] of the relative level-set dimension at (a, tau),
/// by a log-spaced scan refined with golden-section search. lo may be 0.
NumericSup sup_level_set(double a, double tau, double lo, double hi);

struct UaDimension {
  DimensionValue value;
  std::optional<double> b_star;  // 2a / (1 - a) for a < 1
};

/// Dimension of {liminf L_N / N >= a}.
UaDimension dim_u_a(double a, double dim_h);
UaDimension dim_u_a(double a, const Sft& sft);

}  // namespace shiftlab

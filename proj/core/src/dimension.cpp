#include "shiftlab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shiftlab/error.hpp"

namespace shiftlab {
namespace {

DimensionValue make(RegimeTag tag, double relative, double dim_h) {
  return DimensionValue{tag, relative, relative * dim_h};
}

void check_nonnegative(double x, const char* name) {
  if (std::isnan(x) || x < 0.0) fail(ErrorKind::InvalidParameters, std::string(name) + " must be >= 0");
}

}  // namespace

std::string_view to_string(RegimeTag tag) noexcept {
  switch (tag) {
    case RegimeTag::Formula: return "FORMULA";
    case RegimeTag::Empty: return "EMPTY";
    case RegimeTag::Countable: return "COUNTABLE";
    case RegimeTag::Full: return "FULL";
  }
  return "?";
}

DimensionValue dim_hea(double tau, double dim_h) {
  check_nonnegative(tau, "tau");
  if (tau > 1.0) return make(RegimeTag::Countable, 0.0, dim_h);
  const double q = (1.0 - tau) / (1.0 + tau);
  return make(tau == 0.0 ? RegimeTag::Full : RegimeTag::Formula, q * q, dim_h);
}

DimensionValue dim_hea(double tau, const Sft& sft) { return dim_hea(tau, hausdorff_dimension(sft)); }

double level_set_formula(double a, double b, double tau) {
  if (a == 0.0 && b == 0.0) return 1.0;
  if (std::isinf(b)) return 0.0;
  return (b * (1.0 - tau * a) - a) / ((1.0 + tau * b) * (b - a));
}

DimensionValue dim_level_set(double a, double b, double tau, double dim_h) {
  check_nonnegative(a, "a");
  check_nonnegative(b, "b");
  check_nonnegative(tau, "tau");
  if (a > b) fail(ErrorKind::InvalidPair, "a > b: the liminf cannot exceed the limsup");

  if (tau == 0.0) return make(RegimeTag::Full, 1.0, dim_h);
  if (std::isinf(tau)) {
    if (b > 0.0) return make(a > 0.0 ? RegimeTag::Countable : RegimeTag::Formula, 0.0, dim_h);
    return make(RegimeTag::Full, 1.0, dim_h);
  }
  const double inv = 1.0 / tau;
  if (a >= inv) {
    if (!std::isinf(b)) return make(RegimeTag::Empty, 0.0, dim_h);
    return make(a > inv ? RegimeTag::Countable : RegimeTag::Formula, 0.0, dim_h);
  }
  if (a == 0.0 && b == 0.0) return make(RegimeTag::Full, 1.0, dim_h);
  if (std::isinf(b)) return make(RegimeTag::Formula, 0.0, dim_h);
  const double boundary = a / (1.0 - tau * a);
  if (b < boundary) return make(RegimeTag::Empty, 0.0, dim_h);
  // The numerator vanishes on the boundary curve; report exactly 0 there.
  if (b == boundary) return make(RegimeTag::Formula, 0.0, dim_h);
  return make(RegimeTag::Formula, std::max(0.0, level_set_formula(a, b, tau)), dim_h);
}

DimensionValue dim_level_set(double a, double b, double tau, const Sft& sft) {
  return dim_level_set(a, b, tau, hausdorff_dimension(sft));
}

NumericSup sup_level_set(double a, double tau, double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo)) fail(ErrorKind::InvalidParameters, "need 0 <= lo < hi");
  auto f = [&](double b) { return dim_level_set(a, b, tau, 1.0).relative; };
  if (lo == 0.0) {
    // b = 0 is an isolated regime (a = b = 0); scan the rest from just above it.
    NumericSup rest = sup_level_set(a, tau, std::min(1e-9, hi / 2), hi);
    const double at_zero = a == 0.0 ? f(0.0) : 0.0;
    return at_zero >= rest.value ? NumericSup{at_zero, 0.0} : rest;
  }
  constexpr int kGrid = 4000;
  const double log_lo = std::log(lo), step = (std::log(hi) - log_lo) / kGrid;
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = f(std::exp(log_lo + step * i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  // Golden-section search on the bracketing grid cells (the function is unimodal in b).
  double x0 = std::exp(log_lo + step * std::max(best - 1, 0));
  double x1 = std::exp(log_lo + step * std::min(best + 1, kGrid));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = x1 - g * (x1 - x0), d = x0 + g * (x1 - x0);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && x1 - x0 > 1e-13 * std::max(1.0, x1); ++it) {
    if (fc > fd) {
      x1 = d;
      d = c;
      fd = fc;
      c = x1 - g * (x1 - x0);
      fc = f(c);
    } else {
      x0 = c;
      c = d;
      fc = fd;
      d = x0 + g * (x1 - x0);
      fd = f(d);
    }
  }
  const double arg = 0.5 * (x0 + x1);
  NumericSup out{f(arg), arg};
  if (best_value > out.value) out = NumericSup{best_value, std::exp(log_lo + step * best)};
  return out;
}

UaDimension dim_u_a(double a, double dim_h) {
  check_nonnegative(a, "a");
  UaDimension out;
  if (a > 1.0) {
    out.value = make(RegimeTag::Countable, 0.0, dim_h);
    return out;
  }
  const double q = (1.0 - a) / (1.0 + a);
  out.value = make(a == 0.0 ? RegimeTag::Full : RegimeTag::Formula, q * q, dim_h);
  if (a < 1.0) out.b_star = 2.0 * a / (1.0 - a);
  return out;
}

UaDimension dim_u_a(double a, const Sft& sft) { return dim_u_a(a, hausdorff_dimension(sft)); }

}  // namespace shiftlab

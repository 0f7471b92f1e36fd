#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shiftlab {

enum class TargetFamily { LogRate, LinearRate, PowerRate, Table };

std::string_view to_string(TargetFamily family) noexcept;
TargetFamily target_family_from_string(std::string_view name);

/// A shrinking-target radius psi, handled through Phi(N) = -log_m psi(N) >= 0.
///   LogRate:    Phi(N) = c * ln N / h, i.e. c * log_A N with A = e^h
///   LinearRate: Phi(N) = tau * N
///   PowerRate:  Phi(N) = N^s, 0 < s < 1
///   Table:      piecewise linear through (N, Phi) pairs, constant outside
class TargetFunction {
 public:
  static TargetFunction log_rate(double c, double entropy);
  static TargetFunction linear_rate(double tau);
  static TargetFunction power_rate(double s);
  static TargetFunction table(std::vector<std::pair<double, double>> points);
  /// Phi == 0 (psi >= 1).
  static TargetFunction zero() { return linear_rate(0.0); }

  TargetFamily family() const noexcept { return family_; }
  double parameter() const noexcept { return p_; }  // c, tau or s
  double entropy() const noexcept { return h_; }    // LogRate only
  const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }

  double phi(double n) const;
  /// lim Phi(N) / N.
  double tau() const noexcept;
  /// Largest integer x >= 0 with Phi(x) <= y (-1 if Phi(0) > y), by bisection; Phi must be
  /// nondecreasing. Throws InvalidParameters if y is never exceeded.
  std::int64_t inverse_floor(double y) const;
  /// Phi(N + Phi(N)) / Phi(N); tends to 1 for the regular families.
  double regularity_ratio(double n) const;
  bool strictly_increasing() const noexcept;

  /// e.g. "LOG_RATE(c=0.5)".
  std::string describe() const;

 private:
  TargetFamily family_ = TargetFamily::LinearRate;
  double p_ = 0.0;
  double h_ = 0.0;
  std::vector<std::pair<double, double>> points_;
};

}  // namespace shiftlab

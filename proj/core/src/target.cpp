#include "shiftlab/target.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shiftlab/error.hpp"

namespace shiftlab {

std::string_view to_string(TargetFamily family) noexcept {
  switch (family) {
    case TargetFamily::LogRate: return "LOG_RATE";
    case TargetFamily::LinearRate: return "LINEAR_RATE";
    case TargetFamily::PowerRate: return "POWER_RATE";
    case TargetFamily::Table: return "TABLE";
  }
  return "?";
}

TargetFamily target_family_from_string(std::string_view name) {
  for (auto f : {TargetFamily::LogRate, TargetFamily::LinearRate, TargetFamily::PowerRate, TargetFamily::Table}) {
    if (to_string(f) == name) return f;
  }
  fail(ErrorKind::MalformedInput, "unknown target family \"" + std::string(name) + "\"");
}

TargetFunction TargetFunction::log_rate(double c, double entropy) {
  if (!(c >= 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidParameters, "LOG_RATE needs a finite c >= 0");
  if (!(entropy > 0.0)) fail(ErrorKind::InvalidParameters, "LOG_RATE needs positive entropy");
  TargetFunction f;
  f.family_ = TargetFamily::LogRate;
  f.p_ = c;
  f.h_ = entropy;
  return f;
}

TargetFunction TargetFunction::linear_rate(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail(ErrorKind::InvalidParameters, "LINEAR_RATE needs a finite tau >= 0");
  TargetFunction f;
  f.family_ = TargetFamily::LinearRate;
  f.p_ = tau;
  return f;
}

TargetFunction TargetFunction::power_rate(double s) {
  if (!(s > 0.0 && s < 1.0)) fail(ErrorKind::InvalidParameters, "POWER_RATE needs 0 < s < 1");
  TargetFunction f;
  f.family_ = TargetFamily::PowerRate;
  f.p_ = s;
  return f;
}

TargetFunction TargetFunction::table(std::vector<std::pair<double, double>> points) {
  if (points.empty()) fail(ErrorKind::InvalidParameters, "TABLE needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].second >= 0.0) || !std::isfinite(points[i].second) || !std::isfinite(points[i].first)) {
      fail(ErrorKind::InvalidParameters, "TABLE values must be finite and Phi >= 0");
    }
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      fail(ErrorKind::InvalidParameters, "TABLE abscissae must be strictly increasing");
    }
  }
  TargetFunction f;
  f.family_ = TargetFamily::Table;
  f.points_ = std::move(points);
  return f;
}

double TargetFunction::phi(double n) const {
  switch (family_) {
    case TargetFamily::LogRate: return n > 1.0 ? p_ * std::log(n) / h_ : 0.0;
    case TargetFamily::LinearRate: return n > 0.0 ? p_ * n : 0.0;
    case TargetFamily::PowerRate: return n > 0.0 ? std::pow(n, p_) : 0.0;
    case TargetFamily::Table: {
      if (n <= points_.front().first) return points_.front().second;
      if (n >= points_.back().first) return points_.back().second;
      const auto hi = std::upper_bound(points_.begin(), points_.end(), n,
                                       [](double x, const auto& pt) { return x < pt.first; });
      const auto lo = hi - 1;
      const double w = (n - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  return 0.0;
}

double TargetFunction::tau() const noexcept { return family_ == TargetFamily::LinearRate ? p_ : 0.0; }

bool TargetFunction::strictly_increasing() const noexcept {
  switch (family_) {
    case TargetFamily::LogRate:
    case TargetFamily::LinearRate: return p_ > 0.0;
    case TargetFamily::PowerRate: return true;
    case TargetFamily::Table: return false;  // constant beyond the last point
  }
  return false;
}

std::int64_t TargetFunction::inverse_floor(double y) const {
  if (phi(0.0) > y) return -1;
  std::int64_t lo = 0, hi = 1;
  constexpr std::int64_t kCap = std::int64_t{1} << 62;
  while (phi(static_cast<double>(hi)) <= y) {
    lo = hi;
    if (hi >= kCap) fail(ErrorKind::InvalidParameters, "Phi never exceeds " + std::to_string(y));
    hi *= 2;
  }
  // Invariant: phi(lo) <= y < phi(hi).
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (phi(static_cast<double>(mid)) <= y) lo = mid;
    else hi = mid;
  }
  return lo;
}

double TargetFunction::regularity_ratio(double n) const {
  const double base = phi(n);
  if (base <= 0.0) fail(ErrorKind::InvalidParameters, "regularity ratio needs Phi(N) > 0");
  return phi(n + base) / base;
}

std::string TargetFunction::describe() const {
  char buf[96];
  switch (family_) {
    case TargetFamily::LogRate: std::snprintf(buf, sizeof buf, "LOG_RATE(c=%.17g)", p_); break;
    case TargetFamily::LinearRate: std::snprintf(buf, sizeof buf, "LINEAR_RATE(tau=%.17g)", p_); break;
    case TargetFamily::PowerRate: std::snprintf(buf, sizeof buf, "POWER_RATE(s=%.17g)", p_); break;
    case TargetFamily::Table: std::snprintf(buf, sizeof buf, "TABLE(%zu points)", points_.size()); break;
  }
  return buf;
}

}  // namespace shiftlab

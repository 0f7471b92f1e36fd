#include "shiftlab/sampler.hpp"

#include <cmath>
#include <limits>

#include "shiftlab/error.hpp"

namespace shiftlab {
namespace {

bool is_uniform(const ParryMeasure& measure) {
  const double p = 1.0 / measure.m;
  auto near = [p](double x) { return std::abs(x - p) <= 1e-14; };
  for (double x : measure.pi) {
    if (!near(x)) return false;
  }
  for (const auto& row : measure.trans) {
    for (double x : row) {
      if (!near(x)) return false;
    }
  }
  return true;
}

}  // namespace

OrbitSampler::Row OrbitSampler::make_row(const std::vector<double>& probabilities) {
  Row row;
  long double cumulative = 0.0L;
  constexpr long double kScale = 18446744073709551616.0L;  // 2^64
  for (std::size_t j = 0; j < probabilities.size(); ++j) {
    if (probabilities[j] <= 0.0) continue;
    cumulative += probabilities[j];
    const long double scaled = cumulative * kScale;
    row.symbols.push_back(static_cast<Symbol>(j));
    row.thresholds.push_back(scaled >= kScale ? std::numeric_limits<std::uint64_t>::max()
                                              : static_cast<std::uint64_t>(scaled));
  }
  if (row.symbols.empty()) fail(ErrorKind::InvalidParameters, "distribution has no positive entry");
  return row;
}

Symbol OrbitSampler::pick(const Row& row, std::uint64_t u) {
  const std::size_t last = row.symbols.size() - 1;
  for (std::size_t k = 0; k < last; ++k) {
    if (u < row.thresholds[k]) return row.symbols[k];
  }
  return row.symbols[last];
}

OrbitSampler::OrbitSampler(const ParryMeasure& measure) : m_(measure.m) {
  initial_ = make_row(measure.pi);
  for (const auto& p : measure.trans) rows_.push_back(make_row(p));
  if (is_uniform(measure) && (m_ & (m_ - 1)) == 0) {
    while ((1 << uniform_bits_) < m_) ++uniform_bits_;
  }
}

OrbitSampler::Stream::Stream(const OrbitSampler& sampler, std::uint64_t seed) : s_(&sampler), rng_(seed) {}

Symbol OrbitSampler::Stream::next() {
  ++position_;
  const int k = s_->uniform_bits_;
  if (k > 0) {
    if (bits_left_ < k) {
      bits_ = rng_.next();
      bits_left_ = 64;
    }
    const auto symbol = static_cast<Symbol>(bits_ & ((std::uint64_t{1} << k) - 1));
    bits_ >>= k;
    bits_left_ -= k;
    return symbol;
  }
  const Row& row = state_ < 0 ? s_->initial_ : s_->rows_[static_cast<std::size_t>(state_)];
  const Symbol symbol = row.symbols.size() == 1 ? row.symbols[0] : pick(row, rng_.next());
  state_ = symbol;
  return symbol;
}

Word OrbitSampler::sample(std::uint64_t seed, std::int64_t length) const {
  if (length < 1) fail(ErrorKind::InvalidParameters, "sample length must be >= 1");
  Word w(static_cast<std::size_t>(length));
  Stream s(*this, seed);
  for (auto& x : w) x = s.next();
  return w;
}

Word sample_orbit(const ParryMeasure& measure, std::uint64_t seed, std::int64_t length) {
  return OrbitSampler(measure).sample(seed, length);
}

}  // namespace shiftlab

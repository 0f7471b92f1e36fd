#pragma once

#include <cstdint>

namespace shiftlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64: draw i is mix64(key + (i + 1) * gamma), so any
/// draw can be computed without the ones before it.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t at(std::uint64_t i) const noexcept { return mix64(key_ + (i + 1) * kGamma); }
  constexpr std::uint64_t next() noexcept { return at(counter_++); }
  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Key of the substream for sample `index` under `master`. Depends on nothing
/// else, so results do not change with the number of workers.
constexpr std::uint64_t substream_key(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index * SplitMix64::kGamma + 0x632be59bd9b4e019ULL));
}

}  // namespace shiftlab

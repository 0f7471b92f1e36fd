#include "shiftlab/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "shiftlab/error.hpp"
#include "shiftlab/rng.hpp"

namespace shiftlab {
namespace {

constexpr long double kIntCap = 4e18L;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::int64_t to_int(long double x, const char* what) {
  if (!(x < kIntCap)) fail(ErrorKind::InvalidParameters, std::string(what) + " overflows 64-bit integers");
  return static_cast<std::int64_t>(x);
}

// ln #Sigma^L with a cache; exact big-integer counts underneath.
class LogCounts {
 public:
  explicit LogCounts(const Sft& sft) : sft_(sft) {}
  double operator()(std::int64_t length) {
    if (length <= 0) return 0.0;
    auto it = cache_.find(length);
    if (it == cache_.end()) it = cache_.emplace(length, log_count_words(sft_, length)).first;
    return it->second;
  }

 private:
  const Sft& sft_;
  std::map<std::int64_t, double> cache_;
};

// c_j[s] = number of admissible words of length j + 1 starting with s, kept
// as normalized vectors plus a log scale; used to sample uniform words and
// to weigh partially observed blocks.
class WordCounter {
 public:
  explicit WordCounter(const Sft& sft) : sft_(sft), m_(sft.alphabet_size()) {
    std::vector<double> c(static_cast<std::size_t>(m_), 1.0 / m_);
    chat_.push_back(c);
    lognorm_.push_back(std::log(static_cast<double>(m_)));
    constexpr int kMaxStored = 4096;
    for (int j = 1; j <= kMaxStored; ++j) {
      const auto [next, growth] = step(chat_.back());
      double diff = 0.0;
      for (int s = 0; s < m_; ++s) diff = std::max(diff, std::abs(next[static_cast<std::size_t>(s)] - chat_.back()[static_cast<std::size_t>(s)]));
      chat_.push_back(next);
      lognorm_.push_back(lognorm_.back() + std::log(growth));
      if (diff <= 1e-16) break;
    }
    log_growth_ = std::log(step(chat_.back()).second);
  }

  const std::vector<double>& chat(std::int64_t j) const {
    return chat_[static_cast<std::size_t>(std::min<std::int64_t>(j, last()))];
  }
  double log_scale(std::int64_t j) const {
    if (j <= last()) return lognorm_[static_cast<std::size_t>(j)];
    return lognorm_.back() + static_cast<double>(j - last()) * log_growth_;
  }
  double log_c(std::int64_t j, int s) const { return std::log(chat(j)[static_cast<std::size_t>(s)]) + log_scale(j); }
  // ln #Sigma^L = ln sum_s c_{L-1}[s]; chat sums to 1.
  double log_total(std::int64_t length) const { return log_scale(length - 1); }

  Word sample(std::int64_t length, SplitMix64& rng) const {
    Word w(static_cast<std::size_t>(length));
    int prev = -1;
    for (std::int64_t q = 1; q <= length; ++q) {
      const auto& c = chat(length - q);
      double total = 0.0;
      for (int t = 0; t < m_; ++t) {
        if (prev < 0 || sft_.allowed(prev, t)) total += c[static_cast<std::size_t>(t)];
      }
      double u = rng.uniform() * total;
      int chosen = -1;
      for (int t = 0; t < m_; ++t) {
        if (prev >= 0 && !sft_.allowed(prev, t)) continue;
        chosen = t;
        u -= c[static_cast<std::size_t>(t)];
        if (u < 0.0) break;
      }
      w[static_cast<std::size_t>(q - 1)] = static_cast<Symbol>(chosen);
      prev = chosen;
    }
    return w;
  }

 private:
  std::int64_t last() const { return static_cast<std::int64_t>(chat_.size()) - 1; }
  std::pair<std::vector<double>, double> step(const std::vector<double>& c) const {
    std::vector<double> next(static_cast<std::size_t>(m_), 0.0);
    double total = 0.0;
    for (int s = 0; s < m_; ++s) {
      for (int t = 0; t < m_; ++t) {
        if (sft_.allowed(s, t)) next[static_cast<std::size_t>(s)] += c[static_cast<std::size_t>(t)];
      }
      total += next[static_cast<std::size_t>(s)];
    }
    for (double& x : next) x /= total;
    return {next, total};
  }

  const Sft& sft_;
  int m_;
  std::vector<std::vector<double>> chat_;
  std::vector<double> lognorm_;
  double log_growth_ = 0.0;
};

struct Segment {
  enum Kind { Fixed, Bridge, Free } kind;
  Word fixed;
  std::int64_t length = 0;
};

double section4_formula(double a, double b) {
  if (a == 0.0) return 1.0 / (1.0 + b);
  return (b * (1.0 - a) - a) / ((1.0 + b) * (b - a));
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::Section4: return "SECTION4";
    case Variant::Case2: return "CASE2";
    case Variant::Case3: return "CASE3";
    case Variant::Case4: return "CASE4";
    case Variant::Case5: return "CASE5";
    case Variant::Case6: return "CASE6";
  }
  return "?";
}

Variant variant_from_string(std::string_view name) {
  for (auto v : {Variant::Section4, Variant::Case2, Variant::Case3, Variant::Case4, Variant::Case5, Variant::Case6}) {
    if (to_string(v) == name) return v;
  }
  fail(ErrorKind::MalformedInput, "unknown variant \"" + std::string(name) + "\"");
}

CantorConstruction::CantorConstruction(const Sft& sft, const CantorParams& params)
    : sft_(sft), params_(params), gap_(sft.gap()), marker_(marker_symbol(sft)) {}

CantorConstruction CantorConstruction::build(const Sft& sft, const CantorParams& params) {
  if (params.depth_budget < 1) fail(ErrorKind::InvalidParameters, "depth budget must be >= 1");
  CantorConstruction c(sft, params);
  if (params.variant == Variant::Section4) c.build_section4();
  else c.build_case();
  return c;
}

void CantorConstruction::build_section4() {
  const double a = params_.a, b = params_.b;
  const std::int64_t gap = gap_;
  if (std::isnan(a) || std::isnan(b) || a < 0.0 || a >= 1.0) {
    fail(ErrorKind::InvalidParameters, "SECTION4 needs 0 <= a < 1");
  }
  if (!(b > 0.0) || std::isinf(b)) fail(ErrorKind::InvalidParameters, "SECTION4 needs 0 < b < inf");
  const double boundary = a / (1.0 - a);
  if (b < boundary) {
    fail(ErrorKind::EmptyRegime, "b = " + num(b) + " < a/(1-a) = " + num(boundary) + ": the level set is empty");
  }
  if (b == boundary) {
    fail(ErrorKind::InvalidParameters, "b = a/(1-a) lies on the boundary where the dimension is 0; nothing to construct");
  }

  // b / a is rounded in double so that inputs like 0.5 / 0.1 give exactly 5.
  const long double ratio = a > 0.0 ? static_cast<long double>(b / a) : 0.0L;
  // floor() that forgives representation error just below an integer.
  auto snap_floor = [](long double x) {
    const long double r = std::round(x);
    return std::fabs(x - r) <= 1e-12L * std::max(1.0L, std::fabs(x)) ? r : std::floor(x);
  };
  auto m_of = [&](std::int64_t n) {
    long double m = snap_floor((1.0L + b) * n) + 1.0L;
    if (a == 0.0) m += std::floor(std::sqrt(static_cast<long double>(n)));
    return to_int(m, "m_k");
  };
  // n_k for k >= 1 given k0.
  auto n_of = [&](int k, int k0, std::int64_t previous) -> std::int64_t {
    if (a > 0.0) return to_int(snap_floor(std::pow(ratio, static_cast<long double>(k + k0))) + 1.0L, "n_k");
    if (k == 1) return params_.n1;
    return to_int(static_cast<long double>(k - 1 + k0 + 1) * previous, "n_k");
  };
  auto level_one_ok = [&](int k0) {
    const std::int64_t n1 = n_of(1, k0, 0), n2 = n_of(2, k0, n1), m1 = m_of(n1);
    return m1 - n1 - 2 * gap - 1 >= 1 && m1 < n2;
  };

  if (a == 0.0 && params_.n1 < 1) fail(ErrorKind::InvalidParameters, "n1 must be >= 1");
  if (params_.k0) {
    k0_ = *params_.k0;
    if (k0_ < 1) fail(ErrorKind::InvalidParameters, "k0 must be >= 1");
  } else if (a > 0.0) {
    const double threshold = std::max(a * (2.0 + b) / (b * (1.0 - a) - a), a * (1.0 + b) / (b * (b - a)));
    for (k0_ = 1;; ++k0_) {
      if (std::pow(ratio, static_cast<long double>(k0_)) > threshold && level_one_ok(k0_)) break;
      if (std::pow(ratio, static_cast<long double>(k0_ + 2)) > kIntCap / 4) {
        fail(ErrorKind::InvalidParameters, "no k0 keeps n_k within 64-bit range");
      }
    }
  } else {
    k0_ = static_cast<int>(std::ceil(b + 1.0));
    while (!level_one_ok(k0_)) ++k0_;
  }
  if (!level_one_ok(k0_)) {
    fail(ErrorKind::InvalidParameters, "k0 = " + std::to_string(k0_) + " leaves the level-1 zero block empty or m_1 >= n_2");
  }

  LogCounts log_count(sft_);
  std::int64_t n_k = n_of(1, k0_, 0);
  initial_ = n_k;
  double mass = 0.0;
  std::int64_t previous_gap = 0;
  for (int k = 1;; ++k) {
    const std::int64_t n_next = n_of(k + 1, k0_, n_k);
    const std::int64_t end = n_next + (2 * gap + 1) * k;
    if (end > params_.depth_budget) break;
    Level lv;
    lv.k = k;
    lv.n = n_k;
    lv.m_or_d = m_of(n_k);
    const std::int64_t width = lv.m_or_d - n_k;
    if (width <= previous_gap) {
      fail(ErrorKind::InvalidParameters, "m_k - n_k is not strictly increasing at k = " + std::to_string(k));
    }
    if (lv.m_or_d >= n_next) fail(ErrorKind::InvalidParameters, "m_k >= n_{k+1} at k = " + std::to_string(k));
    lv.t_or_l = (n_next - lv.m_or_d - 1) / width;
    lv.free_length = width - 2 * gap - 1;
    if (lv.free_length < 1) fail(ErrorKind::InvalidParameters, "empty zero block at k = " + std::to_string(k));
    lv.tail_length = n_next - lv.m_or_d - lv.t_or_l * width;
    lv.end = end;
    const std::int64_t width_next = m_of(n_next) - n_next;
    lv.plateau_end = end + width_next + gap + 1;
    lv.log_count = static_cast<double>(lv.t_or_l) * log_count(lv.free_length) + log_count(lv.tail_length);
    mass -= lv.log_count;
    lv.log_mass = mass;
    levels_.push_back(lv);
    previous_gap = width;
    n_k = n_next;
  }
}

void CantorConstruction::build_case() {
  const Variant v = params_.variant;
  const double a = params_.a, b = params_.b;
  const std::int64_t gap = gap_;
  if (!params_.psi) fail(ErrorKind::InvalidParameters, std::string(to_string(v)) + " needs a target function");
  const TargetFunction& psi = *params_.psi;
  if (psi.tau() != 0.0) fail(ErrorKind::InvalidParameters, "the CASE constructions need tau = 0");
  if (!psi.strictly_increasing()) fail(ErrorKind::InvalidParameters, "the CASE constructions need Phi strictly increasing");
  if (params_.p < 3) fail(ErrorKind::InvalidParameters, "P must be >= 3");
  if (a > b) fail(ErrorKind::InvalidPair, "a > b");
  const bool ok = [&] {
    switch (v) {
      case Variant::Case2: return a > 0.0 && std::isfinite(b);
      case Variant::Case3: return a > 0.0 && std::isfinite(a) && std::isinf(b);
      case Variant::Case4: return a == 0.0 && b > 0.0 && std::isfinite(b);
      case Variant::Case5: return a == 0.0 && std::isinf(b);
      case Variant::Case6: return a == 0.0 && b == 0.0;
      default: return false;
    }
  }();
  if (!ok) fail(ErrorKind::InvalidParameters, std::string(to_string(v)) + " does not cover (a, b) = (" + num(a) + ", " + num(b) + ")");

  const std::int64_t p = params_.p;
  auto phi = [&](std::int64_t n) { return psi.phi(static_cast<double>(n)); };
  auto d_of = [&](std::int64_t n) -> std::int64_t {
    const double f = phi(n);
    double x = 0.0;
    switch (v) {
      case Variant::Case2:
      case Variant::Case4: x = b * f; break;
      case Variant::Case3: x = f > 0.0 ? a * f * std::log(static_cast<double>(n) / f) : 0.0; break;
      case Variant::Case5: x = std::sqrt(static_cast<double>(n) * f); break;
      default: x = std::sqrt(f); break;
    }
    return x > 0.0 ? static_cast<std::int64_t>(std::floor(x)) : 0;
  };
  // The zero block 0^{d - 1 - 3M} must be nonempty as well.
  const std::int64_t need = std::max(v == Variant::Case2 ? p + 2 + 3 * gap : p + 2 + 2 * gap, 3 * gap + 2);

  constexpr std::int64_t kSeedCap = 1'000'000'000;
  std::int64_t hi = 1;
  while (d_of(hi) < need) {
    if (hi > kSeedCap) fail(ErrorKind::SeedSearchFailure, "no n0 <= 1e9 satisfies the seeding inequality");
    hi *= 2;
  }
  std::int64_t lo = hi / 2;  // d_of(lo) < need unless lo == 0
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (d_of(mid) >= need) hi = mid;
    else lo = mid;
  }
  initial_ = hi;
  d0_ = d_of(hi);

  const double budget = static_cast<double>(params_.depth_budget);
  // Largest integer x with Phi(x) <= y, or nullopt if that already exceeds the budget.
  auto inverse = [&](double y) -> std::optional<std::int64_t> {
    if (psi.phi(budget + 1.0) <= y) return std::nullopt;
    return psi.inverse_floor(y);
  };

  LogCounts log_count(sft_);
  std::int64_t n_prev = initial_, d_prev = d0_;
  double mass = 0.0;
  for (int k = 1;; ++k) {
    std::optional<std::int64_t> base;
    const double f = phi(n_prev);
    switch (v) {
      case Variant::Case2: base = inverse(b / a * f); break;
      case Variant::Case3: base = inverse(f * std::log(static_cast<double>(n_prev) / f)); break;
      case Variant::Case4: base = inverse(static_cast<double>(k - 1) * f); break;
      case Variant::Case5: base = inverse(static_cast<double>(n_prev) * f); break;
      default: base = n_prev + 1; break;
    }
    if (!base) break;
    const std::int64_t n_k = std::max(*base, n_prev) + p * d_prev;
    if (n_k > params_.depth_budget) break;
    Level lv;
    lv.k = k;
    lv.n = n_k;
    lv.m_or_d = d_of(n_k);
    lv.t_or_l = (n_k - n_prev) / d_prev - 1;
    lv.r = (n_k - n_prev) - d_prev * (lv.t_or_l + 1);
    lv.free_length = d_prev - 1 - 2 * gap;
    lv.tail_length = lv.r;
    if (d_prev - 1 - 3 * gap < 1) fail(ErrorKind::InvalidParameters, "empty zero block at k = " + std::to_string(k));
    lv.end = n_k;
    lv.plateau_end = n_k + lv.m_or_d;
    lv.log_count = static_cast<double>(lv.t_or_l) * log_count(lv.free_length);
    mass -= lv.log_count;
    lv.log_mass = mass;
    levels_.push_back(lv);
    n_prev = n_k;
    d_prev = lv.m_or_d;
  }
}

const Level& CantorConstruction::level(int k) const {
  if (k < 1 || k > depth()) {
    fail(ErrorKind::DepthExceeded, "level " + std::to_string(k) + " outside the built depth 1.." + std::to_string(depth()));
  }
  return levels_[static_cast<std::size_t>(k - 1)];
}

double CantorConstruction::log_mass(int k) const { return k == 0 ? 0.0 : level(k).log_mass; }

double CantorConstruction::local_dimension(int k) const {
  const Level& lv = level(k);
  return -lv.log_mass / (static_cast<double>(lv.end) * std::log(static_cast<double>(sft_.alphabet_size())));
}

double CantorConstruction::plateau_local_dimension(int k) const {
  const Level& lv = level(k);
  return -lv.log_mass / (static_cast<double>(lv.plateau_end) * std::log(static_cast<double>(sft_.alphabet_size())));
}

double CantorConstruction::target_dimension() const {
  const double dim = hausdorff_dimension(sft_);
  if (params_.variant == Variant::Section4) return section4_formula(params_.a, params_.b) * dim;
  return (1.0 - 2.0 / params_.p) * dim;
}

TargetFunction CantorConstruction::ratio_target() const {
  if (params_.variant == Variant::Section4) return TargetFunction::linear_rate(1.0);
  return *params_.psi;
}

std::vector<std::int64_t> CantorConstruction::liminf_checkpoints() const {
  std::vector<std::int64_t> out;
  const bool s4 = params_.variant == Variant::Section4;
  for (const Level& lv : levels_) out.push_back(s4 ? lv.end : lv.end + 1);
  return out;
}

std::vector<std::int64_t> CantorConstruction::limsup_checkpoints() const {
  std::vector<std::int64_t> out;
  for (const Level& lv : levels_) out.push_back(lv.end + 2 * gap_ + 1);
  return out;
}

Word CantorConstruction::sample_point(std::uint64_t seed, std::int64_t length) const {
  return sample_with_mass(seed, length).word;
}

SampledPoint CantorConstruction::sample_with_mass(std::uint64_t seed, std::int64_t length) const {
  if (length < 1) fail(ErrorKind::InvalidParameters, "sample length must be >= 1");
  const std::int64_t limit = depth() == 0 ? initial_ : levels_.back().end;
  if (length > limit) {
    fail(ErrorKind::DepthExceeded, "sample length " + std::to_string(length) + " exceeds the built depth (" +
                                       std::to_string(limit) + " symbols)");
  }
  const WordCounter counter(sft_);
  const int m = sft_.alphabet_size();
  const Symbol omega = static_cast<Symbol>(marker_);
  const bool s4 = params_.variant == Variant::Section4;
  SplitMix64 rng(seed);

  SampledPoint out;
  out.word.assign(static_cast<std::size_t>(std::min(length, initial_)), 0);
  out.log_mass.assign(out.word.size(), 0.0);
  double mass = 0.0;

  for (int k = 1; k <= depth() && static_cast<std::int64_t>(out.word.size()) < length; ++k) {
    const Level& lv = levels_[static_cast<std::size_t>(k - 1)];
    std::vector<Segment> segs;
    auto fixed = [&](Word w) { segs.push_back({Segment::Fixed, std::move(w), 0}); };
    auto bridge = [&] { segs.push_back({Segment::Bridge, {}, gap_}); };
    auto free_block = [&](std::int64_t len) { segs.push_back({Segment::Free, {}, len}); };
    const std::int64_t zeros = s4 ? lv.free_length : lv.free_length - gap_;
    bridge();
    fixed({omega});
    bridge();
    fixed(Word(static_cast<std::size_t>(zeros), 0));
    bridge();
    for (std::int64_t i = 0; i < lv.t_or_l; ++i) {
      fixed({omega});
      bridge();
      free_block(lv.free_length);
      bridge();
    }
    if (s4) {
      fixed({omega});
      bridge();
      free_block(lv.tail_length);
    } else if (lv.r <= params_.p) {
      fixed(Word(static_cast<std::size_t>(lv.r), 0));
    } else {
      Word v(static_cast<std::size_t>(lv.r), 0);
      v[0] = omega;
      fixed(std::move(v));
    }

    Word pending;  // free block sampled ahead of its bridge
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const Segment& seg = segs[i];
      const int prev = out.word.back();
      if (seg.kind == Segment::Fixed) {
        for (Symbol s : seg.fixed) {
          out.word.push_back(s);
          out.log_mass.push_back(mass);
        }
        continue;
      }
      if (seg.kind == Segment::Bridge) {
        const bool before_free = i + 1 < segs.size() && segs[i + 1].kind == Segment::Free;
        int target = -1;
        if (before_free) {
          pending = counter.sample(segs[i + 1].length, rng);
          target = pending[0];
        } else {
          for (std::size_t j = i + 1; j < segs.size() && target < 0; ++j) {
            if (segs[j].kind == Segment::Fixed && !segs[j].fixed.empty()) target = segs[j].fixed[0];
          }
        }
        const Word w = target >= 0 ? bridge_symbols(sft_, prev, target) : least_extension(sft_, prev, gap_);
        if (!before_free) {
          for (Symbol s : w) {
            out.word.push_back(s);
            out.log_mass.push_back(mass);
          }
          continue;
        }
        // Each observed bridge symbol narrows the possible first symbols of the block.
        const std::int64_t len = segs[i + 1].length;
        std::vector<Word> options(static_cast<std::size_t>(m));
        for (int s = 0; s < m; ++s) options[static_cast<std::size_t>(s)] = bridge_symbols(sft_, prev, s);
        const double total = counter.log_total(len);
        for (std::size_t j = 0; j < w.size(); ++j) {
          double weight = 0.0;
          for (int s = 0; s < m; ++s) {
            const Word& o = options[static_cast<std::size_t>(s)];
            if (std::equal(o.begin(), o.begin() + static_cast<std::ptrdiff_t>(j + 1), w.begin())) {
              weight += std::exp(counter.log_c(len - 1, s) - total);
            }
          }
          out.word.push_back(w[j]);
          out.log_mass.push_back(mass + std::log(std::min(weight, 1.0)));
        }
        continue;
      }
      // Free block: the mass of the prefix is the share of completions.
      const double total = counter.log_total(seg.length);
      for (std::int64_t q = 1; q <= seg.length; ++q) {
        const Symbol s = pending[static_cast<std::size_t>(q - 1)];
        out.word.push_back(s);
        out.log_mass.push_back(mass - total + counter.log_c(seg.length - q, s));
      }
      mass -= total;
      out.log_mass.back() = mass;
    }
  }
  out.word.resize(static_cast<std::size_t>(length));
  out.log_mass.resize(static_cast<std::size_t>(length));
  return out;
}

}  // namespace shiftlab

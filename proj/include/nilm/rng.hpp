#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>

namespace nilm {

using u128 = unsigned __int128;

/// Stream tags mixed into derived seeds. Values are fixed forever: changing
/// one changes every generated file.
enum class StreamPurpose : std::uint64_t {
  label_plan = 0x4c41424c'504c414eULL,
  example = 0x4558414d'504c4531ULL,
  subsample = 0x53554253'414d504cULL,
  corpus = 0x434f5250'55535331ULL,
  shuffle = 0x53485546'464c4531ULL,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and an ordered
/// list of tags: h0 = mix64(seed), h_{i+1} = mix64(h_i ^ mix64(tag_i)).
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = mix64(seed);
  for (auto t : tags) h = mix64(h ^ mix64(t));
  return h;
}

constexpr std::uint64_t tag(StreamPurpose p) noexcept {
  return static_cast<std::uint64_t>(p);
}

/// Random stream over std::mt19937_64. Bounded draws are implemented here
/// rather than with <random> distributions, whose algorithms differ between
/// standard libraries, so that output is identical across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  /// Uniform in [0, n) for 128-bit bounds. n must be > 0.
  u128 below128(u128 n) {
    if (n <= UINT64_MAX) return below(static_cast<std::uint64_t>(n));
    const u128 threshold = (0 - n) % n;
    for (;;) {
      const u128 hi = engine_();
      const u128 x = (hi << 64) | engine_();
      if (x >= threshold) return x % n;
    }
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(std::uint64_t{n})); }

  /// Uniform in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool coin() { return (engine_() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = index(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace nilm

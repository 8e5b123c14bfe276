#pragma once

#include <cstdint>
#include <string_view>

#include "attrkit/common.hpp"

namespace attrkit {

/// Counter-based deterministic generator. A value depends only on (key,
/// counter), never on call order, so sampling is reproducible bit-for-bit
/// across runs and safe to evaluate concurrently. Streams derived with
/// stream() are statistically independent for distinct tags.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ kKeyInit)) {}

  CounterRng stream(std::uint64_t tag) const {
    return CounterRng(mix(key_ ^ mix(tag + kStreamSalt)), 0);
  }

  CounterRng stream(std::string_view name) const { return stream(fnv1a(name)); }

  std::uint64_t bits(std::uint64_t i) const { return mix(key_ + i * kGamma); }

  /// Uniform in [0, 1).
  double uniform(std::uint64_t i) const {
    return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1, 1).
  double symmetric(std::uint64_t i) const { return 2.0 * uniform(i) - 1.0; }

  /// Standard normal (Box-Muller; burns two counters internally).
  double gaussian(std::uint64_t i) const {
    const double u1 = static_cast<double>((bits(2 * i) >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  Vec gaussian_vec(std::uint64_t i, int dim) const {
    Vec v(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j)
      v[static_cast<std::size_t>(j)] = gaussian(i * static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(j));
    return v;
  }

 private:
  CounterRng(std::uint64_t key, int) : key_(key) {}

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kKeyInit = 0x5bf0f1c2a3d4e5f6ull;
  static constexpr std::uint64_t kStreamSalt = 0x94d049bb133111ebull;
  static constexpr double kPi = 3.14159265358979323846;

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t x) {
    x += kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

  std::uint64_t key_;
};

}  // namespace attrkit

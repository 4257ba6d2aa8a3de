#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace homonet {

// Named stream purposes. Every random draw in the pipeline comes from a stream
// derived from (master seed, purpose, index), so results do not depend on the
// order in which streams are consumed or on the worker count.
namespace stream {
inline constexpr std::string_view kProfile = "profile";
inline constexpr std::string_view kProjection = "projection";
inline constexpr std::string_view kLink = "link";
inline constexpr std::string_view kMetrics = "metrics";
inline constexpr std::string_view kLouvain = "louvain";
inline constexpr std::string_view kSampler = "sampler";
inline constexpr std::string_view kSamplerOrder = "sampler-order";
}  // namespace stream

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose,
                                    std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ fnv1a64(purpose));
  return splitmix64(h ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Thin wrapper over mt19937_64 with portable conversions. The standard
/// distributions are implementation-defined, so the few we need are spelled
/// out here to keep artifacts identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0)
      : engine_(derive_seed(seed, purpose, index)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection on the top of the range removes modulo bias.
    const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Number of failures before the first success, success probability 1 - p.
  /// Mean p / (1 - p).
  std::uint64_t geometric_failures(double p) {
    if (p <= 0.0) return 0;
    const double u = uniform_open_closed();
    const double x = std::floor(std::log(u) / std::log(p));
    if (!(x < 1e18)) return std::uint64_t{1} << 60;
    return static_cast<std::uint64_t>(x);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace homonet

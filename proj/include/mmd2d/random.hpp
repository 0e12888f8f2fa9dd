#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mmd2d {

/// Sub-stream purposes. Each trial derives one independent stream per tag so
/// that, e.g., the blockage process never shares draws with the transmitters.
enum class StreamTag : std::uint64_t {
  transmitters = 1,
  blockages = 2,
  desired_link = 3,
  interferer_marks = 4,
  thinning = 5,
  interferer_errors = 6,
  gain_samples = 7,
  calibration = 8,
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the stream identified by (master_seed, index, tag). A pure
/// function of its inputs, so per-trial streams do not depend on execution
/// order or thread count.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                                    StreamTag tag) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ index);
  h = mix64(h ^ static_cast<std::uint64_t>(tag));
  return h;
}

/// Deterministic pseudo-random stream. Not thread-safe; one per caller.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master_seed, std::uint64_t index, StreamTag tag)
      : engine_(derive_seed(master_seed, index, tag)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double standard_normal() { return normal_(engine_); }

  /// Exp(1) draw.
  double exponential() { return -std::log1p(-uniform01()); }

  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mmd2d

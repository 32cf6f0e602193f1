#pragma once

#include <cstdint>
#include <random>

namespace qp {

/// Seeded random stream. Sub-streams are derived deterministically from
/// (seed, index) so partitioned work is replayable.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform();
  std::uint64_t next_u64() { return engine_(); }

  /// Independent stream for worker/setting `index`.
  RandomStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser, used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace qp

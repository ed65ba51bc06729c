#pragma once

#include <cstdint>
#include <limits>

namespace alphaidx {

/// Deterministic SplitMix64 stream. Substreams are derived from the stream
/// key alone, so a child stream never depends on how many values the parent
/// produced. Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed);

  /// Independent child stream keyed by (this stream's key, index).
  RandomStream substream(std::uint64_t index) const;

  result_type operator()();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in the open interval (0, 1).
  double uniform_open();

  std::uint64_t key() const { return key_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  struct FromKey {};
  RandomStream(FromKey, std::uint64_t key);

  std::uint64_t key_;
  std::uint64_t state_;
};

}  // namespace alphaidx

#pragma once

#include <cstdint>

namespace zen {

// Counter-based 64-bit generator built on the SplitMix64 output function.
//
// Draw number `c` of a stream is a pure function of (seed, stream, c):
//
//   key  = mix64(seed) ^ mix64(stream + 0x632BE59BD9B4E019)
//   x(c) = mix64(key + (c + 1) * 0x9E3779B97F4A7C15)
//
// where mix64 is the SplitMix64 finalizer. Streams are addressed by index,
// so parallel workers can derive their own stream (`split`) without
// coordinating, and results do not depend on scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t at(std::uint64_t counter) const noexcept;
  std::uint64_t next() noexcept { return at(counter_++); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  // Uniform integer in [0, bound). Unbiased (rejection on the low range).
  std::uint64_t below(std::uint64_t bound) noexcept;
  // Standard normal via Box-Muller; consumes two draws.
  double normal() noexcept;
  // +1 or -1 from the lowest bit of one draw.
  double rademacher() noexcept { return (next() & 1u) ? 1.0 : -1.0; }

  CounterRng split(std::uint64_t stream) const noexcept;

  std::uint64_t counter() const noexcept { return counter_; }
  std::uint64_t key() const noexcept { return key_; }

  static std::uint64_t mix64(std::uint64_t z) noexcept;

 private:
  CounterRng(std::uint64_t key, std::uint64_t counter, int) noexcept
      : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace zen

#pragma once

#include <cstdint>

namespace koenigs {

/// Counter-based stream: the sequence depends only on (seed, stream, index),
/// so any walk can be replayed without touching a shared generator.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept
      : state_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL) ^ mix(mix(index) + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace koenigs

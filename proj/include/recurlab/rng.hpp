#pragma once

#include <cstdint>

namespace recurlab {

// SplitMix64 (Steele, Lea & Flood 2014). Counter based: output i is
// mix(state0 + (i+1) * gamma), so streams are reproducible on every platform.
// Each ensemble member gets its own stream keyed by (master seed, point index).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static SplitMix64 for_point(std::uint64_t seed, std::uint64_t point_index) noexcept {
    return SplitMix64(mix(seed ^ mix(point_index + kGamma)));
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound > 0. Lemire's multiply-shift, bias < 2^-64 * bound.
  std::uint64_t below(std::uint64_t bound) noexcept {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>((*this)()) * bound) >> 64);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace recurlab

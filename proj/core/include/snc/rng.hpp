#pragma once

#include <cstdint>
#include <limits>

namespace snc {

// splitmix64. Small, fast, and good enough for Monte-Carlo work; used
// both directly and to derive independent substreams from a master seed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<std::uint64_t>::max();
  }

  constexpr result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdull;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ull;
  z ^= z >> 33;
  return z;
}

// Stream `index` under `master` is a pure function of the pair, so draws
// are reproducible under any parallel schedule.
constexpr SplitMix64 substream(std::uint64_t master, std::uint64_t index) {
  return SplitMix64(mix64(master + 0x9e3779b97f4a7c15ull * (index + 1)));
}

}  // namespace snc

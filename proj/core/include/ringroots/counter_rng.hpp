#ifndef RINGROOTS_COUNTER_RNG_HPP_
#define RINGROOTS_COUNTER_RNG_HPP_

#include <cstdint>

namespace ringroots {

// Stateless counter-based randomness: every draw is a pure function of
// (seed, index, stream), so results never depend on evaluation order.

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b = 0) {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

/// Uniform on the open interval (0, 1); never returns 0 or 1.
constexpr double uniform_open(std::uint64_t seed, std::uint64_t index,
                              std::uint64_t stream = 0) {
  const std::uint64_t bits = derive_seed(seed, index, stream) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace ringroots

#endif  // RINGROOTS_COUNTER_RNG_HPP_

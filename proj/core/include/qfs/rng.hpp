#pragma once

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace qfs {

/// Portable 64-bit Mersenne Twister; its output sequence is fixed by the standard.
using Engine = boost::random::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream `stream` of master seed `seed`. Streams with different
/// ids never share state, so draws can be reordered or parallelized freely.
inline Engine make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Engine(mix64(mix64(seed) ^ mix64(stream + 0x5851f42d4c957f2dULL)));
}

/// Uniform double in [0, 1) built from the top 53 bits; identical on every platform.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace qfs

#pragma once

#include <cstdint>
#include <random>

namespace pftx {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Purpose tags keep the sample stream and the protocol stream of a trial
// independent, so every scheme sees the same samples for a given trial index.
enum class StreamPurpose : std::uint64_t { Sample = 1, Protocol = 2, Test = 3 };

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    StreamPurpose purpose) {
  return mix64(mix64(mix64(master) ^ index) ^ static_cast<std::uint64_t>(purpose));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t index, StreamPurpose purpose) {
  return Rng{derive_seed(master, index, purpose)};
}

}  // namespace pftx

#pragma once

#include <cstdint>
#include <random>

namespace mifx {

// splitmix64 finalizer; used to derive independent sub-seeds from
// (seed, index) pairs so parallel and serial execution consume
// identical random streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

} // namespace mifx

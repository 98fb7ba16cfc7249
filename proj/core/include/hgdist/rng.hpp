#pragma once

#include <cstdint>
#include <random>

namespace hgdist {

using RngEngine = std::mt19937_64;

// splitmix64; used to derive independent sub-seeds from (seed, index) pairs
// so replicate/attempt loops stay deterministic under any evaluation order.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix_seed(seed ^ mix_seed(index));
}

inline RngEngine make_engine(std::uint64_t seed) { return RngEngine(seed); }

// Uniform in [0,1) with 53 random bits; avoids distribution objects whose
// draw sequences are implementation-defined.
inline double uniform_unit(RngEngine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; deterministic across platforms.
inline std::uint64_t uniform_below(RngEngine& eng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = eng();
    while (x >= limit) x = eng();
    return x % n;
}

}  // namespace hgdist

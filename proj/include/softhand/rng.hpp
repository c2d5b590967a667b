#pragma once

#include <cstdint>

namespace softhand::detail {

// Counter-based stream: every draw is keyed by (seed, indices), so results
// are independent of evaluation order and safe to partition across threads.

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                             std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double u01(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform double in [-half_range, half_range].
inline double symmetric(std::uint64_t h, double half_range) {
    return (2.0 * u01(h) - 1.0) * half_range;
}

}  // namespace softhand::detail

#pragma once

#include <cstdint>
#include <random>

// Seeded randomness with platform-independent output.  mt19937_64 gives a
// portable bit stream; the mappings below are pinned here because the
// standard distribution objects are implementation-defined and would break
// reproducibility of committed fixtures across standard libraries.

namespace errhunt {

using rng64 = std::mt19937_64;

inline double uniform01(rng64& g) {
    return double(g() >> 11) * 0x1.0p-53; // 53 random bits in [0,1)
}

inline double uniform_real(rng64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Inclusive bounds.  Modulo bias is < 2^-50 for the small ranges used here.
inline std::int64_t uniform_int(rng64& g, std::int64_t lo, std::int64_t hi) {
    return lo + std::int64_t(g() % std::uint64_t(hi - lo + 1));
}

} // namespace errhunt

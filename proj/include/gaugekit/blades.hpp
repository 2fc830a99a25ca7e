#pragma once

#include <bit>
#include <cstdint>

namespace gaugekit {

/// Basis blades are n-bit masks: bit i set means generator e_{i+1} is a
/// factor, canonical order ascending. Shared by the Clifford algebra and
/// the exterior-form machinery (the latter is the q = 0 case).

inline int bit_count(std::uint32_t m) { return std::popcount(m); }

/// Parity sign accumulated when sorting the concatenation of two
/// ascending blades: each generator of b walks past the generators of a
/// with larger index.
inline int reorder_sign(std::uint32_t a, std::uint32_t b) {
    int swaps = 0;
    while (b) {
        const int j = std::countr_zero(b);
        swaps += std::popcount(a >> (j + 1));
        b &= b - 1;
    }
    return (swaps & 1) ? -1 : 1;
}

} // namespace gaugekit

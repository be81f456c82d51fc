#pragma once

#include <cstdint>
#include <stdexcept>

namespace iris {

using Id = std::uint64_t;

// The circular m-bit address space. All identifier arithmetic is modulo 2^m.
struct RingParams {
    unsigned m = 1;

    constexpr std::uint64_t size() const { return std::uint64_t{1} << m; }
    constexpr std::uint64_t mask() const { return size() - 1; }

    void validate() const {
        if (m < 1 || m > 63)
            throw std::invalid_argument("ring bit-width must be in [1, 63]");
    }
};

enum class Bound { open, closed };

// Clockwise distance from a to b: (b - a) mod 2^m. Total; cw_distance(a, a) == 0.
inline std::uint64_t cw_distance(Id a, Id b, RingParams ring) {
    return (b - a) & ring.mask();
}

// True iff x lies on the clockwise arc from lo to hi with the given end bounds.
// The degenerate lo == hi arc with (open, closed] bounds covers the whole ring,
// so a one-node network is responsible for every identifier.
bool in_cw_interval(Id x, Id lo, Id hi, Bound lo_bound, Bound hi_bound, RingParams ring);

// o - delta mod 2^m.
Id offset_back(Id o, std::uint64_t delta, RingParams ring);

// Point on the clockwise arc [n, r] at fraction (1 - alpha) from n, i.e.
// r minus alpha times the arc length, rounded half away from zero.
Id lerp_toward(Id n, Id r, double alpha, RingParams ring);

} // namespace iris

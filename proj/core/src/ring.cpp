#include "iris/ring.hpp"

#include <cmath>

namespace iris {

bool in_cw_interval(Id x, Id lo, Id hi, Bound lo_bound, Bound hi_bound, RingParams ring) {
    x &= ring.mask();
    lo &= ring.mask();
    hi &= ring.mask();
    if (lo == hi) {
        // Degenerate arc spans the whole ring; fully open bounds exclude the seam.
        if (lo_bound == Bound::open && hi_bound == Bound::open)
            return x != lo;
        return true;
    }
    std::uint64_t dx = cw_distance(lo, x, ring);
    std::uint64_t dh = cw_distance(lo, hi, ring);
    if (dx == 0)
        return lo_bound == Bound::closed;
    if (dx == dh)
        return hi_bound == Bound::closed;
    return dx < dh;
}

Id offset_back(Id o, std::uint64_t delta, RingParams ring) {
    if (delta > ring.mask())
        throw std::invalid_argument("offset exceeds address space");
    return (o - delta) & ring.mask();
}

Id lerp_toward(Id n, Id r, double alpha, RingParams ring) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1)");
    std::uint64_t d = cw_distance(n, r, ring);
    auto back = static_cast<std::uint64_t>(std::llround(alpha * static_cast<double>(d)));
    if (back > d)
        back = d;
    return (r - back) & ring.mask();
}

} // namespace iris

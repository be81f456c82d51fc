#include "doctest.h"

#include "iris/ring.hpp"

using namespace iris;

namespace {
const RingParams m6{6};
const RingParams m7{7};
} // namespace

TEST_CASE("clockwise distance") {
    CHECK(cw_distance(5, 5, m6) == 0);
    CHECK(cw_distance(8, 62, m7) == 54);
    CHECK(cw_distance(61, 3, m7) == 70); // wrap-around
    CHECK(cw_distance(0, 63, m6) == 63);
    CHECK(cw_distance(63, 0, m6) == 1);
}

TEST_CASE("clockwise distances of a pair sum to the ring size") {
    RingParams m4{4};
    for (Id a = 0; a < m4.size(); ++a)
        for (Id b = 0; b < m4.size(); ++b)
            if (a != b)
                CHECK(cw_distance(a, b, m4) + cw_distance(b, a, m4) == m4.size());
}

TEST_CASE("interval membership") {
    CHECK(in_cw_interval(62, 61, 3, Bound::open, Bound::closed, m7));
    CHECK(in_cw_interval(5, 4, 6, Bound::open, Bound::open, m6));
    CHECK_FALSE(in_cw_interval(60, 61, 3, Bound::open, Bound::closed, m7));
    CHECK(in_cw_interval(3, 61, 3, Bound::open, Bound::closed, m7));
    CHECK_FALSE(in_cw_interval(61, 61, 3, Bound::open, Bound::closed, m7));
    CHECK(in_cw_interval(61, 61, 3, Bound::closed, Bound::open, m7));
}

TEST_CASE("degenerate lo == hi arc covers the whole ring") {
    for (Id x = 0; x < m6.size(); ++x) {
        CHECK(in_cw_interval(x, 17, 17, Bound::open, Bound::closed, m6));
        CHECK(in_cw_interval(x, 17, 17, Bound::closed, Bound::closed, m6));
        CHECK(in_cw_interval(x, 17, 17, Bound::open, Bound::open, m6) == (x != 17));
    }
}

TEST_CASE("half-open intervals complement each other") {
    RingParams m4{4};
    for (Id a = 0; a < m4.size(); ++a)
        for (Id b = 0; b < m4.size(); ++b) {
            if (a == b)
                continue;
            for (Id x = 0; x < m4.size(); ++x) {
                bool in_ab = in_cw_interval(x, a, b, Bound::open, Bound::closed, m4);
                bool in_ba = in_cw_interval(x, b, a, Bound::open, Bound::closed, m4);
                CHECK(in_ab != in_ba);
            }
        }
}

TEST_CASE("backward offset") {
    // Ring ids in these cases come from a drawing whose bit-width is never
    // stated; m=7 is the smallest that fits them.
    CHECK(offset_back(75, 22, m7) == 53);
    CHECK(offset_back(75, 0, m7) == 75);
    CHECK(offset_back(3, 10, m7) == 121); // wrap-around
    CHECK_THROWS_AS(offset_back(3, 128, m7), std::invalid_argument);
}

TEST_CASE("offset then distance round-trips") {
    for (std::uint64_t delta = 0; delta < m6.size(); ++delta)
        CHECK(cw_distance(offset_back(50, delta, m6), 50, m6) == delta);
}

TEST_CASE("interpolation toward a reference point") {
    CHECK(lerp_toward(55, 68, 0.25, m7) == 65); // 0.25*13 = 3.25 -> 3
    CHECK(lerp_toward(62, 73, 0.25, m7) == 70); // 0.25*11 = 2.75 -> 3
    CHECK(lerp_toward(69, 74, 0.25, m7) == 73); // 0.25*5  = 1.25 -> 1
    CHECK(lerp_toward(69, 74, 0.0, m7) == 74);
    CHECK_THROWS_AS(lerp_toward(0, 1, 1.0, m7), std::invalid_argument);
    CHECK_THROWS_AS(lerp_toward(0, 1, -0.1, m7), std::invalid_argument);
}

TEST_CASE("interpolation stays on the arc") {
    RingParams m5{5};
    for (Id n = 0; n < m5.size(); n += 3)
        for (Id r = 0; r < m5.size(); r += 5)
            for (double alpha : {0.0, 0.3, 0.5, 0.99}) {
                Id out = lerp_toward(n, r, alpha, m5);
                CHECK(cw_distance(n, out, m5) <= cw_distance(n, r, m5));
            }
}

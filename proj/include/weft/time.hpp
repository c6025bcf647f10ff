#pragma once

#include <cstdint>
#include <limits>

namespace weft {

// Integer timeline. kTimeInfinity is a sentinel, never a real instant; all
// arithmetic that could reach it saturates instead of wrapping.
using TimePoint = std::uint64_t;

inline constexpr TimePoint kTimeInfinity = std::numeric_limits<TimePoint>::max();

constexpr TimePoint sat_add(TimePoint a, TimePoint b) {
    return (a > kTimeInfinity - b) ? kTimeInfinity : a + b;
}

constexpr TimePoint sat_sub(TimePoint a, TimePoint b) {
    return (a < b) ? 0 : a - b;
}

// Inclusive bound pair [lower:upper] attached to temporal operators.
// upper == kTimeInfinity means unbounded; lower <= upper is enforced at parse
// time and assumed everywhere else.
struct TimeBound {
    TimePoint lower = 0;
    TimePoint upper = kTimeInfinity;

    constexpr bool untimed() const { return lower == 0 && upper == kTimeInfinity; }
    constexpr bool upper_bounded() const { return upper != kTimeInfinity; }

    friend constexpr bool operator==(const TimeBound&, const TimeBound&) = default;
};

} // namespace weft

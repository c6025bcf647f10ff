#include "weft/intervals.hpp"

#include <algorithm>

namespace weft {

bool contains(IntervalView a, TimePoint t) {
    // Runs are sorted by begin; find the first run beginning after t.
    auto it = std::upper_bound(a.begin(), a.end(), t,
                               [](TimePoint v, const Interval& iv) { return v < iv.begin; });
    if (it == a.begin()) return false;
    --it;
    return t < it->end;
}

bool overlaps(IntervalView a, TimePoint lo, TimePoint hi) {
    if (lo >= hi) return false;
    for (const Interval& iv : a) {
        if (iv.begin >= hi) break;
        if (iv.end > lo) return true;
    }
    return false;
}

void union_into(IntervalView a, IntervalView b, IntervalWriter& out) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        bool take_a = j == b.size() || (i < a.size() && a[i].begin <= b[j].begin);
        out.push(take_a ? a[i++] : b[j++]);
    }
}

void intersect_into(IntervalView a, IntervalView b, IntervalWriter& out) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        TimePoint lo = std::max(a[i].begin, b[j].begin);
        TimePoint hi = std::min(a[i].end, b[j].end);
        if (lo < hi) out.push(lo, hi);
        // Advance whichever run ends first; ties advance both.
        if (a[i].end < b[j].end) ++i;
        else if (b[j].end < a[i].end) ++j;
        else { ++i; ++j; }
    }
}

void complement_into(IntervalView a, Interval window, IntervalWriter& out) {
    TimePoint cursor = window.begin;
    for (const Interval& iv : a) {
        if (iv.end <= window.begin) continue;
        if (iv.begin >= window.end) break;
        if (iv.begin > cursor) out.push(cursor, std::min(iv.begin, window.end));
        cursor = std::max(cursor, iv.end);
        if (cursor >= window.end) return;
    }
    if (cursor < window.end) out.push(cursor, window.end);
}

void trim_before(IntervalView a, TimePoint cut, IntervalWriter& out) {
    // Ends are strictly increasing in canonical form, so the survivors are a
    // suffix: clip the first and copy the rest wholesale.
    auto it = std::upper_bound(a.begin(), a.end(), cut,
                               [](TimePoint c, const Interval& iv) { return c < iv.end; });
    if (it == a.end()) return;
    out.push(std::max(it->begin, cut), it->end);
    out.append_canonical(IntervalView{it + 1, a.end()});
}

void mark_into(IntervalView a, TimeBound bound, IntervalWriter& out) {
    if (bound.upper == bound.lower) return; // every per-origin window is empty
    for (const Interval& iv : a) {
        TimePoint begin = sat_add(iv.begin, sat_add(bound.lower, 1));
        TimePoint end = bound.upper_bounded() ? sat_add(iv.end, bound.upper) : kTimeInfinity;
        out.push(begin, end);
    }
}

} // namespace weft

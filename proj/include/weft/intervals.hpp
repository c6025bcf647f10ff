#pragma once

// ============================================================================
//  intervals -- half-open interval sets over the integer timeline
//
//  A set is a run of Interval{begin, end} values in canonical form: sorted by
//  begin, pairwise disjoint, never adjacent (touching runs are coalesced) and
//  never empty.  end == kTimeInfinity encodes an unbounded run.  All mutating
//  operations emit through IntervalWriter, which enforces the canonical form
//  on the way out and writes into caller-owned storage; nothing in this
//  module allocates.
// ============================================================================

#include <cassert>
#include <cstddef>
#include <cstring>
#include <span>

#include "weft/time.hpp"

namespace weft {

struct Interval {
    TimePoint begin = 0;
    TimePoint end = 0; // exclusive; kTimeInfinity for an unbounded run

    constexpr bool empty() const { return begin >= end; }
    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

using IntervalView = std::span<const Interval>;

// Appends intervals in nondecreasing begin order into a fixed-capacity span,
// merging overlapping or adjacent pushes.  Exceeding the capacity means a
// static sizing bound was violated; that is a bug, so it asserts rather than
// reporting a runtime error.
class IntervalWriter {
public:
    IntervalWriter(Interval* data, std::size_t capacity)
        : data_(data), capacity_(capacity) {}

    void push(TimePoint begin, TimePoint end) {
        if (begin >= end) return;
        if (size_ > 0) {
            Interval& back = data_[size_ - 1];
            assert(begin >= back.begin && "pushes must be ordered by begin");
            if (begin <= back.end) { // overlap or adjacency: coalesce
                if (end > back.end) back.end = end;
                return;
            }
        }
        assert(size_ < capacity_ && "interval storage bound violated");
        data_[size_++] = Interval{begin, end};
    }

    void push(Interval iv) { push(iv.begin, iv.end); }

    // Appends a canonical tail in one shot.  Only the first run can interact
    // with the current back (the caller must not hold a back reaching past
    // it); the rest are pairwise separated already and are copied wholesale.
    void append_canonical(IntervalView tail) {
        if (tail.empty()) return;
        assert((size_ == 0 || data_[size_ - 1].end <= tail.front().end) &&
               "tail must extend past the current back");
        push(tail.front());
        std::size_t rest = tail.size() - 1;
        if (rest == 0) return;
        assert(size_ + rest <= capacity_ && "interval storage bound violated");
        std::memcpy(data_ + size_, tail.data() + 1, rest * sizeof(Interval));
        size_ += rest;
    }

    IntervalView view() const { return {data_, size_}; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

private:
    Interval* data_;
    std::size_t capacity_;
    std::size_t size_ = 0;
};

// True iff t lies in some run of a.
bool contains(IntervalView a, TimePoint t);

// True iff a intersects the half-open range [lo, hi).
bool overlaps(IntervalView a, TimePoint lo, TimePoint hi);

// out := a  union  b
void union_into(IntervalView a, IntervalView b, IntervalWriter& out);

// out := a  intersect  b
void intersect_into(IntervalView a, IntervalView b, IntervalWriter& out);

// out := window \ a   (complement of a restricted to one window)
void complement_into(IntervalView a, Interval window, IntervalWriter& out);

// out := a with everything below cut removed (runs straddling cut are clipped)
void trim_before(IntervalView a, TimePoint cut, IntervalWriter& out);

// Pointwise window image used by the timed operators: each origin t' in a
// contributes the instants t with t - upper <= t' <= t - lower - 1, i.e. the
// run [t' + lower + 1, t' + upper + 1).  For a whole run [s, e) that union is
//     [s + lower + 1, e + upper)        if upper > lower (finite)
//     [s + lower + 1, kTimeInfinity)    if upper is unbounded
//     empty                             if upper == lower
// with saturation at the top of the timeline.
void mark_into(IntervalView a, TimeBound bound, IntervalWriter& out);

} // namespace weft

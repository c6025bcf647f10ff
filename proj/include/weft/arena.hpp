#pragma once

// ============================================================================
//  arena -- double-buffered slot storage for per-step interval state
//
//  Two equally sized Interval buffers alternate roles each step: the engine
//  reads last step's state from the previous buffer while bump-allocating
//  this step's state in the current one.  swap() exchanges the roles, resets
//  the write cursor and advances the epoch; buffer contents are never zeroed.
//  A further m "output" slots sit outside the double buffer and persist
//  across swaps (the engine keeps per-property run state there).
//
//  Handles carry the epoch at which they were allocated.  The buffer a handle
//  refers to follows from epoch parity, so a handle stays readable for
//  exactly one swap after it was written; anything older is stale and read()
//  rejects it.  Writable pointers are only handed out for the current epoch.
//
//  All storage is acquired in the constructor.  The heap-allocation counter
//  is snapshotted there so allocs_since_construction() exposes whether any
//  code path allocated afterwards (meaningful only when the allocation guard
//  library is linked).
// ============================================================================

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "weft/alloc_count.hpp"
#include "weft/intervals.hpp"

namespace weft {

class ArenaError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class DoubleBufferedArena {
public:
    struct Handle {
        std::uint32_t offset = 0;
        std::uint32_t length = 0;
        std::uint64_t epoch = 0;
    };

    DoubleBufferedArena(std::size_t slot_capacity, std::size_t output_slots);

    // Bump-allocates n slots in the current buffer.  Throws ArenaError on
    // overflow; the capacity is a static bound, so overflow is a bug.
    Handle alloc(std::size_t n);

    // Write access to an allocation made in the current epoch.  With shadow
    // checks enabled, acquiring the same slot twice in one epoch throws.
    Interval* raw(const Handle& h);

    // Read access to an allocation from the current or previous epoch.
    IntervalView read(const Handle& h) const;

    void swap();

    Interval* output_slot(std::size_t k);

    std::size_t capacity() const { return capacity_; }
    std::size_t cursor() const { return cursor_; }
    std::size_t high_water() const { return high_water_; }
    std::size_t remaining() const { return capacity_ - cursor_; }
    std::uint64_t epoch() const { return epoch_; }

    std::uint64_t allocs_since_construction() const {
        return heap_alloc_count() - heap_allocs_at_init_;
    }

    void set_shadow_checks(bool on);

private:
    std::size_t capacity_;
    std::size_t output_count_;
    std::vector<Interval> storage_; // [buf0 | buf1 | outputs]
    std::size_t cursor_ = 0;
    std::size_t high_water_ = 0;
    std::uint64_t epoch_ = 0;
    std::uint64_t heap_allocs_at_init_;
    bool shadow_checks_ = false;
    std::vector<std::uint64_t> shadow_; // per-slot epoch of last write acquisition

    Interval* buffer(std::uint64_t epoch) {
        return storage_.data() + (epoch & 1 ? capacity_ : 0);
    }
    const Interval* buffer(std::uint64_t epoch) const {
        return storage_.data() + (epoch & 1 ? capacity_ : 0);
    }
};

} // namespace weft

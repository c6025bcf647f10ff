#include "weft/arena.hpp"

namespace weft {

DoubleBufferedArena::DoubleBufferedArena(std::size_t slot_capacity, std::size_t output_slots)
    : capacity_(slot_capacity),
      output_count_(output_slots),
      storage_(2 * slot_capacity + output_slots),
      heap_allocs_at_init_(heap_alloc_count()) {}

DoubleBufferedArena::Handle DoubleBufferedArena::alloc(std::size_t n) {
    if (n > capacity_ - cursor_) {
        throw ArenaError("arena overflow: cursor " + std::to_string(cursor_) + " + " +
                         std::to_string(n) + " slots exceeds capacity " +
                         std::to_string(capacity_));
    }
    Handle h{static_cast<std::uint32_t>(cursor_), static_cast<std::uint32_t>(n), epoch_};
    cursor_ += n;
    if (cursor_ > high_water_) high_water_ = cursor_;
    return h;
}

Interval* DoubleBufferedArena::raw(const Handle& h) {
    if (h.epoch != epoch_) {
        throw ArenaError("write access to a handle from epoch " + std::to_string(h.epoch) +
                         " at epoch " + std::to_string(epoch_));
    }
    if (shadow_checks_) {
        for (std::uint32_t i = 0; i < h.length; ++i) {
            std::uint64_t& stamp = shadow_[h.offset + i];
            if (stamp == epoch_ + 1) { // stamps are epoch+1 so 0 means never touched
                throw ArenaError("slot " + std::to_string(h.offset + i) +
                                 " write-acquired twice in epoch " + std::to_string(epoch_));
            }
            stamp = epoch_ + 1;
        }
    }
    return buffer(h.epoch) + h.offset;
}

IntervalView DoubleBufferedArena::read(const Handle& h) const {
    if (h.length == 0) return {};
    if (epoch_ - h.epoch > 1) {
        throw ArenaError("stale handle: allocated at epoch " + std::to_string(h.epoch) +
                         ", read at epoch " + std::to_string(epoch_));
    }
    return {buffer(h.epoch) + h.offset, h.length};
}

void DoubleBufferedArena::swap() {
    ++epoch_;
    cursor_ = 0;
}

Interval* DoubleBufferedArena::output_slot(std::size_t k) {
    assert(k < output_count_);
    return storage_.data() + 2 * capacity_ + k;
}

void DoubleBufferedArena::set_shadow_checks(bool on) {
    shadow_checks_ = on;
    if (on && shadow_.size() != capacity_) shadow_.assign(capacity_, 0);
}

} // namespace weft

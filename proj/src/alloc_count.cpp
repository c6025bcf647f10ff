#include "weft/alloc_count.hpp"

#include <atomic>

namespace weft {

namespace {
std::atomic<std::uint64_t> g_heap_allocs{0};
}

std::uint64_t heap_alloc_count() noexcept {
    return g_heap_allocs.load(std::memory_order_relaxed);
}

void note_heap_alloc() noexcept {
    g_heap_allocs.fetch_add(1, std::memory_order_relaxed);
}

} // namespace weft

// Global operator new/delete overrides that count every heap allocation.
// Built as its own static library so binaries opt in by linking it; the core
// library never depends on it.  Counting uses a relaxed atomic and malloc
// underneath, so behaviour is unchanged apart from the bookkeeping.

#include <cstdlib>
#include <new>

#include "weft/alloc_count.hpp"

namespace {

void* counted_alloc(std::size_t size) {
    weft::note_heap_alloc();
    if (size == 0) size = 1;
    return std::malloc(size);
}

void* counted_alloc_aligned(std::size_t size, std::size_t align) {
    weft::note_heap_alloc();
    if (size == 0) size = align;
    // aligned_alloc requires the size to be a multiple of the alignment.
    std::size_t rounded = (size + align - 1) / align * align;
    return std::aligned_alloc(align, rounded);
}

} // namespace

void* operator new(std::size_t size) {
    if (void* p = counted_alloc(size)) return p;
    throw std::bad_alloc();
}

void* operator new[](std::size_t size) { return ::operator new(size); }

void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
    return counted_alloc(size);
}

void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
    return counted_alloc(size);
}

void* operator new(std::size_t size, std::align_val_t align) {
    if (void* p = counted_alloc_aligned(size, static_cast<std::size_t>(align))) return p;
    throw std::bad_alloc();
}

void* operator new[](std::size_t size, std::align_val_t align) {
    return ::operator new(size, align);
}

void operator delete(void* p) noexcept { std::free(p); }
void operator delete[](void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }
void operator delete[](void* p, std::size_t) noexcept { std::free(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { std::free(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { std::free(p); }
void operator delete(void* p, std::align_val_t) noexcept { std::free(p); }
void operator delete[](void* p, std::align_val_t) noexcept { std::free(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept { std::free(p); }
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept { std::free(p); }

#pragma once

#include <cstdint>

namespace weft {

// Process-wide count of heap allocations observed so far.  The counter only
// moves when the weft_allocguard library (which overrides the global
// operator new) is linked into the binary; without it this reads as a
// constant and allocation-freedom checks are vacuous.
std::uint64_t heap_alloc_count() noexcept;

// Called by the allocation guard; not for general use.
void note_heap_alloc() noexcept;

} // namespace weft

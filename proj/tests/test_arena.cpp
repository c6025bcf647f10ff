#include <doctest.h>

#include "weft/arena.hpp"

using namespace weft;

TEST_CASE("bump allocation and buffer roles across swaps") {
    DoubleBufferedArena arena(8, 2);
    auto h1 = arena.alloc(3);
    auto h2 = arena.alloc(5);
    CHECK(arena.remaining() == 0);
    CHECK(arena.high_water() == 8);

    Interval* p1 = arena.raw(h1);
    p1[0] = {1, 4};
    arena.raw(h2)[0] = {10, 12};

    arena.swap();
    CHECK(arena.cursor() == 0);
    CHECK(arena.remaining() == 8);

    // previous epoch still readable, and the new buffer is distinct storage
    auto h3 = arena.alloc(3);
    arena.raw(h3)[0] = {7, 8};
    h1.length = 1;
    CHECK(arena.read(h1)[0] == Interval{1, 4});
    h3.length = 1;
    CHECK(arena.read(h3)[0] == Interval{7, 8});
}

TEST_CASE("overflow throws rather than spilling") {
    DoubleBufferedArena arena(4, 0);
    arena.alloc(4);
    CHECK_THROWS_AS(arena.alloc(1), ArenaError);
    arena.swap();
    CHECK_NOTHROW(arena.alloc(4)); // fresh cursor after swap
}

TEST_CASE("stale handles are rejected after two swaps") {
    DoubleBufferedArena arena(4, 0);
    auto h = arena.alloc(2);
    arena.raw(h)[0] = {0, 1};
    h.length = 1;

    arena.swap();
    CHECK_NOTHROW(arena.read(h)); // one swap old: the previous buffer
    arena.swap();
    CHECK_THROWS_AS(arena.read(h), ArenaError); // reclaimed by now

    // writable access is current-epoch only
    auto h2 = arena.alloc(1);
    arena.swap();
    CHECK_THROWS_AS(arena.raw(h2), ArenaError);
}

TEST_CASE("zero-length reads never touch storage") {
    DoubleBufferedArena arena(2, 0);
    auto h = arena.alloc(2);
    h.length = 0;
    arena.swap();
    arena.swap();
    arena.swap();
    CHECK(arena.read(h).empty()); // stale but empty, so no storage is exposed
}

TEST_CASE("shadow checks catch double acquisition of a slot") {
    DoubleBufferedArena arena(4, 0);
    arena.set_shadow_checks(true);
    auto h = arena.alloc(2);
    CHECK_NOTHROW(arena.raw(h));
    CHECK_THROWS_AS(arena.raw(h), ArenaError); // second acquisition, same epoch
    arena.swap();
    auto h2 = arena.alloc(2);
    CHECK_NOTHROW(arena.raw(h2)); // same slots, new epoch
}

TEST_CASE("output slots persist across swaps") {
    DoubleBufferedArena arena(2, 3);
    *arena.output_slot(1) = {5, 9};
    arena.swap();
    arena.swap();
    arena.swap();
    CHECK(*arena.output_slot(1) == Interval{5, 9});
}

TEST_CASE("steady state performs no heap allocation") {
    DoubleBufferedArena arena(16, 4);
    std::uint64_t before = arena.allocs_since_construction();
    for (int i = 0; i < 1000; ++i) {
        auto h = arena.alloc(16);
        arena.raw(h)[0] = {0, 1};
        arena.swap();
    }
    CHECK(arena.allocs_since_construction() == before);
}

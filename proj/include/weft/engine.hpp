#pragma once

// ============================================================================
//  engine -- single-pass evaluation of a compiled monitor over a trace
//
//  One EvalSession walks the whole schedule exactly once per step, children
//  before parents, reading last step's interval state from the previous
//  arena buffer and writing this step's into the current one; the buffers
//  then swap roles.  Temporal nodes store origin sets: a Since node keeps
//  the instants t' whose rhs held and whose lhs has held ever since, trimmed
//  to the reach of its upper bound, and its verdict at t is just "does the
//  set meet [t - upper, t - lower - 1]".  With an unbounded upper bound only
//  the minimum origin can ever matter, so the set collapses to one run.
//
//  Dense mode runs the same machinery over windows instead of unit steps.
//  While the inputs hold constant, every node's verdict is piecewise
//  constant, and a peek pass computes each node's current value plus the
//  earliest future instant at which its output could change; the window runs
//  to the smallest of those horizons (capped by the input segment), a commit
//  pass writes each node's state as of the window end, and root verdicts
//  come out as intervals.  A discrete step is the degenerate window of
//  length one.  After construction the session performs no heap allocation
//  on either path.
//
//  Instants are strictly ordered and strictly past-referencing: nothing at
//  the current instant is visible to pre/since/once/historically, so every
//  temporal verdict at t = 0 is vacuous (false, or true for historically).
// ============================================================================

#include <cstdint>
#include <span>
#include <vector>

#include "weft/arena.hpp"
#include "weft/compiler.hpp"
#include "weft/errors.hpp"

namespace weft {

struct StepInput {
    TimePoint time; // must equal now(); first step is 0
    std::span<const std::uint8_t> values; // one per predicate, nonzero = true
};

// Receives dense verdict intervals.  Within one advance() the intervals for
// a given property arrive in increasing order, disjoint and non-adjacent,
// and are clipped to the consumed segment.
class VerdictSink {
public:
    virtual ~VerdictSink() = default;
    virtual void interval(std::uint32_t property, TimePoint begin, TimePoint end) = 0;
};

struct SessionStats {
    std::uint64_t steps = 0;      // unit steps, or windows in dense mode
    std::uint64_t node_evals = 0; // value computations; stays steps * schedule size
    std::size_t arena_capacity = 0;
    std::size_t arena_high_water = 0;
    std::uint64_t heap_allocs = 0; // since the session became ready
};

class EvalSession {
public:
    explicit EvalSession(const CompiledMonitor& monitor);

    // Discrete monitors.  Consumes instant input.time, which must be now()
    // (instants are consumed consecutively from 0).  Returns one verdict
    // byte per property, valid until the next call.
    std::span<const std::uint8_t> step(const StepInput& input);

    // Dense monitors.  Consumes [now(), segment_end), during which every
    // predicate holds the given constant value.
    void advance(TimePoint segment_end, std::span<const std::uint8_t> values, VerdictSink& sink);

    // Root verdict as of the last consumed instant or window.
    bool verdict_for(std::uint32_t property) const;

    // Next unconsumed instant: 0 initially, last step + 1 in discrete mode,
    // the last segment_end in dense mode.
    TimePoint now() const { return position_; }

    const CompiledMonitor& monitor() const { return *mon_; }

    SessionStats stats() const;

    // Largest committed run count seen on a node's persistent state.
    std::uint32_t max_live_markings(std::uint32_t node) const { return max_live_[node]; }

    // Last committed state of a node (empty for stateless nodes).
    IntervalView node_state(std::uint32_t node) const;

    DoubleBufferedArena& arena() { return arena_; }

private:
    const CompiledMonitor* mon_;
    std::uint32_t npreds_;
    DoubleBufferedArena arena_;
    std::vector<std::uint8_t> v_cur_, v_prev_; // per-node value lanes
    std::vector<DoubleBufferedArena::Handle> state_prev_, state_cur_;
    std::vector<std::uint32_t> max_live_;
    std::vector<std::uint8_t> verdicts_;  // per property
    std::vector<std::uint8_t> run_open_;  // per property, inside advance()
    TimePoint position_ = 0;
    bool started_ = false;
    std::uint64_t steps_ = 0;
    std::uint64_t node_evals_ = 0;
    std::uint64_t heap_allocs_at_ready_;
    const std::uint8_t* input_ = nullptr; // live only during step/advance

    TimePoint peek_pass(TimePoint ws, TimePoint limit, bool want_horizon);
    void commit_pass(TimePoint ws, TimePoint we);
    void finish_window(TimePoint we);
    void check_values(std::span<const std::uint8_t> values) const;
};

} // namespace weft

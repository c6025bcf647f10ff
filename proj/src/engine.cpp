#include "weft/engine.hpp"

#include <cassert>

namespace weft {

namespace {

// Origin-set verdict and change horizon for the Since family at instant ws.
// x is the continuation input (the lhs; constant true for once/historically),
// y the origin input.  M is last step's origin set.
struct TemporalPeek {
    bool value;
    TimePoint horizon;
};

// First instant strictly after ws at which the verdict can toggle while x
// stays true, i.e. the first boundary after ws in the union of the output
// windows of the stored origins plus, when y holds, the run contributed by
// origins accumulating from ws on.  Runs are scanned in begin order; the
// first merged run reaching past ws decides.
TimePoint since_horizon(IntervalView M, const TimeBound& b, TimePoint ws, bool y) {
    if (b.upper <= b.lower) return kTimeInfinity; // every output window is empty
    const TimePoint lead = sat_add(b.lower, 1);
    const std::size_t n = M.size();
    bool have = false;
    TimePoint cb = 0, ce = 0;
    for (std::size_t idx = 0; idx <= n; ++idx) {
        TimePoint mb, me;
        if (idx < n) {
            mb = sat_add(M[idx].begin, lead);
            me = b.upper_bounded() ? sat_add(M[idx].end, b.upper) : kTimeInfinity;
        } else {
            if (!y) break;
            mb = sat_add(ws, lead);
            me = kTimeInfinity;
        }
        if (mb >= me) continue;
        if (have && mb <= ce) { // merge with the open run
            if (me > ce) ce = me;
            continue;
        }
        if (have && ce > ws) break; // the open run already decides
        cb = mb;
        ce = me;
        have = true;
    }
    if (!have || ce <= ws) return kTimeInfinity;
    return cb <= ws ? ce : cb; // covered: toggles off at ce; else on at cb
}

TemporalPeek peek_temporal(IntervalView M, const TimeBound& b, TimePoint ws, bool x, bool y,
                           bool want_horizon) {
    TemporalPeek out{false, kTimeInfinity};
    if (ws > b.lower) {
        TimePoint lo = b.upper_bounded() ? sat_sub(ws, b.upper) : 0;
        out.value = overlaps(M, lo, ws - b.lower);
    }
    if (want_horizon) {
        if (x) {
            out.horizon = since_horizon(M, b, ws, y);
        } else {
            // x fails throughout the window, so from ws + 1 only the origin
            // laid down at the instant just before counts.
            bool steady = y && b.lower == 0 && b.upper >= 1;
            if (steady != out.value) out.horizon = ws + 1;
        }
    }
    return out;
}

// Origin set as of window end we, given the set as of ws and constant x, y
// across [ws, we).  Failing x kills every stored origin; y lays down origins
// at each instant of the window; everything below we - upper has expired.
void commit_temporal(IntervalView M, const TimeBound& b, TimePoint ws, TimePoint we, bool x,
                     bool y, IntervalWriter& out) {
    if (!b.upper_bounded()) {
        TimePoint m = kTimeInfinity;
        if (x && !M.empty()) m = M.front().begin;
        if (y) m = std::min(m, x ? ws : we - 1);
        if (m != kTimeInfinity) out.push(m, m + 1);
        return;
    }
    TimePoint cut = sat_sub(we, b.upper);
    if (x) {
        trim_before(M, cut, out);
        if (y) out.push(std::max(ws, cut), we);
    } else if (y && we - 1 >= cut) {
        out.push(we - 1, we);
    }
}

} // namespace

EvalSession::EvalSession(const CompiledMonitor& monitor)
    : mon_(&monitor),
      npreds_(monitor.predicates().size()),
      arena_(monitor.arena_capacity(), monitor.property_count()),
      v_cur_(monitor.schedule().size(), 0),
      v_prev_(monitor.schedule().size(), 0),
      state_prev_(monitor.schedule().size()),
      state_cur_(monitor.schedule().size()),
      max_live_(monitor.schedule().size(), 0),
      verdicts_(monitor.property_count(), 0),
      run_open_(monitor.property_count(), 0),
      heap_allocs_at_ready_(heap_alloc_count()) {}

void EvalSession::check_values(std::span<const std::uint8_t> values) const {
    if (values.size() != npreds_)
        throw DataError("predicate vector length mismatch: got " +
                        std::to_string(values.size()) + ", monitor has " +
                        std::to_string(npreds_));
}

TimePoint EvalSession::peek_pass(TimePoint ws, TimePoint limit, bool want_horizon) {
    const std::span<const NodeRecord> sched = mon_->schedule();
    TimePoint we = limit;
    for (std::size_t i = 0; i < sched.size(); ++i) {
        const NodeRecord& r = sched[i];
        bool v = false;
        TimePoint h = kTimeInfinity;
        switch (r.kind) {
        case FormulaKind::False:
            break;
        case FormulaKind::Atom:
            v = input_[r.predicate] != 0;
            break;
        case FormulaKind::Not:
            v = !v_cur_[r.left];
            break;
        case FormulaKind::And:
            v = v_cur_[r.left] && v_cur_[r.right];
            break;
        case FormulaKind::Or:
            v = v_cur_[r.left] || v_cur_[r.right];
            break;
        case FormulaKind::Previous:
            v = v_prev_[r.left] != 0;
            if (want_horizon && v_prev_[r.left] != v_cur_[r.left]) h = ws + 1;
            break;
        case FormulaKind::Since: {
            TemporalPeek pk = peek_temporal(arena_.read(state_prev_[i]), r.bound, ws,
                                            v_cur_[r.left] != 0, v_cur_[r.right] != 0,
                                            want_horizon);
            v = pk.value;
            h = pk.horizon;
            break;
        }
        case FormulaKind::Once: {
            TemporalPeek pk = peek_temporal(arena_.read(state_prev_[i]), r.bound, ws, true,
                                            v_cur_[r.left] != 0, want_horizon);
            v = pk.value;
            h = pk.horizon;
            break;
        }
        case FormulaKind::Historically: {
            // violation origins of the child; verdict is the negation
            TemporalPeek pk = peek_temporal(arena_.read(state_prev_[i]), r.bound, ws, true,
                                            v_cur_[r.left] == 0, want_horizon);
            v = !pk.value;
            h = pk.horizon;
            break;
        }
        case FormulaKind::Implies:
            assert(false && "normalized schedules contain no ->");
            break;
        }
        v_cur_[i] = v ? 1 : 0;
        if (h < we) we = h;
        ++node_evals_;
    }
    return we;
}

void EvalSession::commit_pass(TimePoint ws, TimePoint we) {
    const std::span<const NodeRecord> sched = mon_->schedule();
    for (std::size_t i = 0; i < sched.size(); ++i) {
        const NodeRecord& r = sched[i];
        std::size_t slots = r.state_slots + r.output_slots;
        if (arena_.remaining() < slots)
            throw ArenaError("arena overflow at node " + std::to_string(i) + " (" +
                             kind_name(r.kind) + "), window start " + std::to_string(ws));
        DoubleBufferedArena::Handle h = arena_.alloc(slots);
        IntervalWriter w(arena_.raw(h), slots);
        switch (r.kind) {
        case FormulaKind::False:
        case FormulaKind::Atom:
        case FormulaKind::Not:
        case FormulaKind::And:
        case FormulaKind::Or:
            if (v_cur_[i]) w.push(ws, we);
            break;
        case FormulaKind::Previous:
            if (v_cur_[r.left]) w.push(we - 1, we);
            break;
        case FormulaKind::Since:
            commit_temporal(arena_.read(state_prev_[i]), r.bound, ws, we, v_cur_[r.left] != 0,
                            v_cur_[r.right] != 0, w);
            break;
        case FormulaKind::Once:
            commit_temporal(arena_.read(state_prev_[i]), r.bound, ws, we, true,
                            v_cur_[r.left] != 0, w);
            break;
        case FormulaKind::Historically:
            commit_temporal(arena_.read(state_prev_[i]), r.bound, ws, we, true,
                            v_cur_[r.left] == 0, w);
            break;
        case FormulaKind::Implies:
            break;
        }
        // the handle keeps only the written prefix; the rest of the
        // allocation is uninitialized and must never surface through read()
        h.length = static_cast<std::uint32_t>(w.size());
        state_cur_[i] = h;
        if (r.state_slots && w.size() > max_live_[i])
            max_live_[i] = static_cast<std::uint32_t>(w.size());
    }
}

void EvalSession::finish_window(TimePoint we) {
    v_cur_.swap(v_prev_);           // this window's values become the previous lane
    state_cur_.swap(state_prev_);
    arena_.swap();
    position_ = we;
    ++steps_;
    started_ = true;
}

std::span<const std::uint8_t> EvalSession::step(const StepInput& input) {
    if (mon_->time_model() != TimeModel::Discrete)
        throw std::logic_error("step() on a dense-time monitor");
    if (input.time != position_)
        throw DataError("discrete step out of order: expected t=" + std::to_string(position_) +
                        ", got t=" + std::to_string(input.time));
    check_values(input.values);
    input_ = input.values.data();

    TimePoint ws = position_;
    peek_pass(ws, ws + 1, false);
    commit_pass(ws, ws + 1);
    const std::span<const std::uint32_t> roots = mon_->roots();
    for (std::size_t k = 0; k < roots.size(); ++k) verdicts_[k] = v_cur_[roots[k]];
    finish_window(ws + 1);
    input_ = nullptr;
    return {verdicts_.data(), verdicts_.size()};
}

void EvalSession::advance(TimePoint segment_end, std::span<const std::uint8_t> values,
                          VerdictSink& sink) {
    if (mon_->time_model() != TimeModel::Dense)
        throw std::logic_error("advance() on a discrete-time monitor");
    if (segment_end <= position_)
        throw DataError("segment end " + std::to_string(segment_end) +
                        " does not advance past t=" + std::to_string(position_));
    check_values(values);
    input_ = values.data();

    const std::span<const std::uint32_t> roots = mon_->roots();
    while (position_ < segment_end) {
        TimePoint ws = position_;
        TimePoint we = peek_pass(ws, segment_end, true);
        assert(we > ws);
        commit_pass(ws, we);
        for (std::size_t k = 0; k < roots.size(); ++k) {
            bool v = v_cur_[roots[k]] != 0;
            verdicts_[k] = v ? 1 : 0;
            Interval* run = arena_.output_slot(k);
            if (v) {
                if (run_open_[k] && run->end == ws) {
                    run->end = we;
                } else {
                    if (run_open_[k]) sink.interval(static_cast<std::uint32_t>(k), run->begin, run->end);
                    *run = {ws, we};
                    run_open_[k] = 1;
                }
            } else if (run_open_[k]) {
                sink.interval(static_cast<std::uint32_t>(k), run->begin, run->end);
                run_open_[k] = 0;
            }
        }
        finish_window(we);
    }
    // Segment consumed: flush runs still open so every emitted interval is
    // clipped to this call.
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (run_open_[k]) {
            Interval* run = arena_.output_slot(k);
            sink.interval(static_cast<std::uint32_t>(k), run->begin, run->end);
            run_open_[k] = 0;
        }
    }
    input_ = nullptr;
}

bool EvalSession::verdict_for(std::uint32_t property) const {
    if (!started_)
        throw std::logic_error("verdict_for before the first step");
    if (property >= verdicts_.size())
        throw std::out_of_range("property index " + std::to_string(property) + " out of range");
    return verdicts_[property] != 0;
}

SessionStats EvalSession::stats() const {
    SessionStats s;
    s.steps = steps_;
    s.node_evals = node_evals_;
    s.arena_capacity = arena_.capacity();
    s.arena_high_water = arena_.high_water();
    s.heap_allocs = heap_alloc_count() - heap_allocs_at_ready_;
    return s;
}

IntervalView EvalSession::node_state(std::uint32_t node) const {
    return arena_.read(state_prev_[node]);
}

} // namespace weft

#pragma once

// ============================================================================
//  compiler -- shared node database and linearized monitors
//
//  Properties are lowered one at a time into a content-addressed node
//  database.  intern() canonicalizes a candidate (And/Or children sorted by
//  id; Since stays ordered, its arguments play different roles), hashes its
//  canonical bytes with 64-bit FNV-1a and then compares field-by-field
//  against every node in the hash bucket.  The hash only routes lookups;
//  equality is what deduplicates, so collisions cost time, never
//  correctness.  Child ids always precede the ids that use them, which makes
//  every database snapshot a valid evaluation schedule as-is.
//
//  finalize() freezes the database into a CompiledMonitor: a flat record
//  array in that bottom-up order plus per-property root indices, the
//  predicate table and the exact arena capacity the engine will need.  The
//  capacity is a sum of closed-form per-node slot counts; the engine
//  allocates against it every step, so the formula being an upper bound is
//  load-bearing and tested.
// ============================================================================

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "weft/formula.hpp"
#include "weft/time.hpp"

namespace weft {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

// False/Atom use no children; unary kinds use left; Since uses both.
// Implies never reaches the database (normalize removes it).
struct NodeDesc {
    FormulaKind kind = FormulaKind::False;
    NodeId left = kNoNode;
    NodeId right = kNoNode;
    TimeBound bound;              // Since/Once/Historically
    std::uint32_t predicate = 0;  // Atom: index into the predicate table

    friend bool operator==(const NodeDesc&, const NodeDesc&) = default;
};

class NodeDatabase {
public:
    explicit NodeDatabase(const PredicateTable& predicates) : predicates_(&predicates) {}

    // Returns the id of an equal existing node or appends a new one.
    NodeId intern(NodeDesc d);

    // FNV-1a over the canonical serialization: kind tag byte, child ids as
    // little-endian u32, bound as two little-endian u64 (unbounded is
    // all-ones), atom name bytes.  Commutative kinds hash their children in
    // sorted order so argument order cannot split equal nodes.
    std::uint64_t structural_hash(const NodeDesc& d) const;

    const NodeDesc& node(NodeId id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }

private:
    const PredicateTable* predicates_;
    std::vector<NodeDesc> nodes_;
    std::unordered_map<std::uint64_t, std::vector<NodeId>> buckets_;
};

enum class TimeModel : std::uint8_t { Discrete = 0, Dense = 1 };

struct NodeRecord {
    FormulaKind kind;
    std::uint32_t left = kNoNode;   // schedule index of the lhs/only child
    std::uint32_t right = kNoNode;  // schedule index of the rhs
    TimeBound bound;
    std::uint32_t predicate = 0;
    std::uint32_t state_slots = 0;  // persistent interval state per step
    std::uint32_t output_slots = 0; // transient output written per step
};

// Arena slots a node needs per buffer.  Stateless kinds and Previous take 1.
// A timed operator with finite upper bound b keeps an origin set inside a
// window of b instants, which fragments into at most ceil(b/2) runs, plus 1
// slot of headroom for the commit path.  An unbounded upper bound collapses
// the set to its minimum, one run.
std::size_t slot_count(FormulaKind kind, const TimeBound& bound);

// Sum of slot_count over the schedule; finalize() stores this as the arena
// capacity.
std::size_t buffer_capacity(std::span<const NodeRecord> schedule);

class CompiledMonitor {
public:
    CompiledMonitor(std::vector<NodeRecord> schedule, std::vector<std::uint32_t> roots,
                    PredicateTable predicates, TimeModel time_model);

    std::span<const NodeRecord> schedule() const { return schedule_; }
    std::span<const std::uint32_t> roots() const { return roots_; }
    const PredicateTable& predicates() const { return predicates_; }
    TimeModel time_model() const { return time_model_; }
    std::size_t property_count() const { return roots_.size(); }
    std::size_t arena_capacity() const { return arena_capacity_; }

private:
    std::vector<NodeRecord> schedule_;
    std::vector<std::uint32_t> roots_;
    PredicateTable predicates_;
    TimeModel time_model_;
    std::size_t arena_capacity_;
};

class MonitorBuilder {
public:
    MonitorBuilder() : database_(predicates_) {}

    // Lowers a normalized formula (no Implies) into the shared database and
    // records its root.  Returns the 0-based property index.
    std::uint32_t register_property(const Formula& f);

    CompiledMonitor finalize(TimeModel time_model);

    PredicateTable& predicates() { return predicates_; }
    const NodeDatabase& database() const { return database_; }
    std::size_t node_count() const { return database_.size(); }
    std::span<const NodeId> roots() const { return roots_; }

private:
    PredicateTable predicates_;
    NodeDatabase database_;
    std::vector<NodeId> roots_;
    bool finalized_ = false;

    NodeId lower(const Formula& f);
};

} // namespace weft

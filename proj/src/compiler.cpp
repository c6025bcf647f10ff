#include "weft/compiler.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace weft {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_byte(std::uint64_t& h, std::uint8_t b) {
    h ^= b;
    h *= kFnvPrime;
}

void fnv_u32(std::uint64_t& h, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) fnv_byte(h, static_cast<std::uint8_t>(v >> (8 * i)));
}

void fnv_u64(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) fnv_byte(h, static_cast<std::uint8_t>(v >> (8 * i)));
}

// And/Or are commutative: a canonical node keeps its children sorted by id.
NodeDesc canonicalize(NodeDesc d) {
    if ((d.kind == FormulaKind::And || d.kind == FormulaKind::Or) && d.left > d.right)
        std::swap(d.left, d.right);
    return d;
}

bool stateless(FormulaKind kind) {
    switch (kind) {
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
        return true;
    default:
        return false;
    }
}

} // namespace

std::uint64_t NodeDatabase::structural_hash(const NodeDesc& d) const {
    NodeDesc c = canonicalize(d);
    std::uint64_t h = kFnvOffset;
    fnv_byte(h, static_cast<std::uint8_t>(c.kind));
    switch (c.kind) {
    case FormulaKind::False:
        break;
    case FormulaKind::Atom:
        for (char ch : predicates_->name(c.predicate))
            fnv_byte(h, static_cast<std::uint8_t>(ch));
        break;
    case FormulaKind::Not:
    case FormulaKind::Previous:
        fnv_u32(h, c.left);
        break;
    case FormulaKind::Once:
    case FormulaKind::Historically:
        fnv_u32(h, c.left);
        fnv_u64(h, c.bound.lower);
        fnv_u64(h, c.bound.upper);
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
        fnv_u32(h, c.left);
        fnv_u32(h, c.right);
        break;
    case FormulaKind::Since:
        fnv_u32(h, c.left);
        fnv_u32(h, c.right);
        fnv_u64(h, c.bound.lower);
        fnv_u64(h, c.bound.upper);
        break;
    case FormulaKind::Implies:
        assert(false && "Implies cannot be interned");
        break;
    }
    return h;
}

NodeId NodeDatabase::intern(NodeDesc d) {
    d = canonicalize(d);
    int a = arity(d.kind);
    assert(a < 1 || d.left < nodes_.size());
    assert(a < 2 || d.right < nodes_.size());
    (void)a;

    std::uint64_t h = structural_hash(d);
    std::vector<NodeId>& bucket = buckets_[h];
    // The hash narrows the search; only field equality may deduplicate.
    for (NodeId id : bucket)
        if (nodes_[id] == d) return id;

    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(d);
    bucket.push_back(id);
    return id;
}

std::size_t slot_count(FormulaKind kind, const TimeBound& bound) {
    switch (kind) {
    case FormulaKind::Since:
    case FormulaKind::Once:
    case FormulaKind::Historically:
        if (!bound.upper_bounded()) return 1; // minimum origin only
        return (bound.upper + 1) / 2 + 1;     // ceil(b/2) runs + commit headroom
    default:
        return 1;
    }
}

std::size_t buffer_capacity(std::span<const NodeRecord> schedule) {
    std::size_t total = 0;
    for (const NodeRecord& r : schedule) total += slot_count(r.kind, r.bound);
    return total;
}

CompiledMonitor::CompiledMonitor(std::vector<NodeRecord> schedule, std::vector<std::uint32_t> roots,
                                 PredicateTable predicates, TimeModel time_model)
    : schedule_(std::move(schedule)),
      roots_(std::move(roots)),
      predicates_(std::move(predicates)),
      time_model_(time_model),
      arena_capacity_(buffer_capacity(schedule_)) {}

NodeId MonitorBuilder::lower(const Formula& f) {
    NodeDesc d;
    d.kind = f.kind;
    switch (f.kind) {
    case FormulaKind::False:
        break;
    case FormulaKind::Atom:
        d.predicate = predicates_.intern(f.atom);
        break;
    case FormulaKind::Not:
    case FormulaKind::Previous:
        d.left = lower(*f.left);
        break;
    case FormulaKind::Once:
    case FormulaKind::Historically:
        d.left = lower(*f.left);
        d.bound = f.bound;
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
        d.left = lower(*f.left);
        d.right = lower(*f.right);
        break;
    case FormulaKind::Since:
        d.left = lower(*f.left);
        d.right = lower(*f.right);
        d.bound = f.bound;
        break;
    case FormulaKind::Implies:
        throw std::logic_error("register_property requires a normalized formula (found ->)");
    }
    return database_.intern(d);
}

std::uint32_t MonitorBuilder::register_property(const Formula& f) {
    if (finalized_)
        throw std::logic_error("register_property after finalize");
    roots_.push_back(lower(f));
    return static_cast<std::uint32_t>(roots_.size() - 1);
}

CompiledMonitor MonitorBuilder::finalize(TimeModel time_model) {
    if (roots_.empty())
        throw std::logic_error("finalize with no properties registered");
    finalized_ = true;

    std::vector<NodeRecord> schedule;
    schedule.reserve(database_.size());
    for (NodeId id = 0; id < database_.size(); ++id) {
        const NodeDesc& d = database_.node(id);
        NodeRecord r;
        r.kind = d.kind;
        r.left = d.left;
        r.right = d.right;
        r.bound = d.bound;
        r.predicate = d.predicate;
        // Children were interned first, so ids are already bottom-up.
        assert(arity(d.kind) < 1 || d.left < id);
        assert(arity(d.kind) < 2 || d.right < id);
        std::size_t slots = slot_count(d.kind, d.bound);
        if (stateless(d.kind)) {
            r.output_slots = static_cast<std::uint32_t>(slots);
        } else {
            r.state_slots = static_cast<std::uint32_t>(slots);
        }
        schedule.push_back(r);
    }
    return CompiledMonitor(std::move(schedule), roots_, predicates_, time_model);
}

} // namespace weft

#include <random>

#include <doctest.h>

#include "weft/check.hpp"
#include "weft/compiler.hpp"
#include "weft/parser.hpp"

using namespace weft;

namespace {

CompiledMonitor compile(std::initializer_list<const char*> texts,
                        TimeModel tm = TimeModel::Discrete) {
    MonitorBuilder b;
    for (const char* t : texts) b.register_property(*parse_property(t, b.predicates()));
    return b.finalize(tm);
}

std::size_t count_kind(const CompiledMonitor& m, FormulaKind k) {
    std::size_t n = 0;
    for (const NodeRecord& r : m.schedule())
        if (r.kind == k) ++n;
    return n;
}

} // namespace

TEST_CASE("two properties over a common body share the whole subtree") {
    CompiledMonitor m = compile({"once[0:10] (p && q)", "historically (p && q)"});
    CHECK(m.schedule().size() == 5); // p, q, and, once, historically
    REQUIRE(m.roots().size() == 2);
    CHECK(m.schedule()[m.roots()[0]].kind == FormulaKind::Once);
    CHECK(m.schedule()[m.roots()[1]].kind == FormulaKind::Historically);
    CHECK(count_kind(m, FormulaKind::And) == 1); // p && q interned once
}

TEST_CASE("a nested timed property lowers to seven nodes") {
    CompiledMonitor m = compile({"historically[1:9] (pre r && (p since[2:6] q))"});
    CHECK(m.schedule().size() == 7);
    CHECK(count_kind(m, FormulaKind::Atom) == 3);
    CHECK(count_kind(m, FormulaKind::Previous) == 1);
    CHECK(count_kind(m, FormulaKind::Since) == 1);
    CHECK(count_kind(m, FormulaKind::And) == 1);
    CHECK(count_kind(m, FormulaKind::Historically) == 1);
    const NodeRecord& root = m.schedule()[m.roots()[0]];
    CHECK(root.bound.lower == 1);
    CHECK(root.bound.upper == 9);
}

TEST_CASE("commutative operands intern to the same node") {
    CompiledMonitor m = compile({"p && q", "q && p"});
    CHECK(count_kind(m, FormulaKind::And) == 1);
    CHECK(m.roots()[0] == m.roots()[1]);

    CompiledMonitor m2 = compile({"p || q || r", "r || q || p"});
    // association differs, so only the atoms and one Or can merge
    CHECK(m2.roots()[0] != m2.roots()[1]);
    CHECK(count_kind(m2, FormulaKind::Atom) == 3);
}

TEST_CASE("since keeps its argument order") {
    CompiledMonitor m = compile({"p since q", "q since p"});
    CHECK(m.roots()[0] != m.roots()[1]);
    CHECK(count_kind(m, FormulaKind::Since) == 2);
}

TEST_CASE("bounds distinguish otherwise equal nodes") {
    CompiledMonitor m = compile({"once[0:5] p", "once[0:6] p", "once[0:5] p"});
    CHECK(count_kind(m, FormulaKind::Once) == 2);
    CHECK(m.roots()[0] == m.roots()[2]);
    CHECK(m.roots()[0] != m.roots()[1]);
}

TEST_CASE("schedules are topologically ordered with children first") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 200; ++round) {
        MonitorBuilder b;
        for (int k = 0; k < 3; ++k) {
            FormulaPtr f = normalize(*gen_random_formula(rng, 5, 9, 4));
            b.register_property(*f);
        }
        CompiledMonitor m = b.finalize(TimeModel::Discrete);
        for (std::uint32_t i = 0; i < m.schedule().size(); ++i) {
            const NodeRecord& r = m.schedule()[i];
            if (arity(r.kind) >= 1) REQUIRE(r.left < i);
            if (arity(r.kind) == 2) REQUIRE(r.right < i);
        }
        for (std::uint32_t root : m.roots()) REQUIRE(root < m.schedule().size());
    }
}

TEST_CASE("re-registering a property reuses every node") {
    MonitorBuilder b;
    FormulaPtr f = parse_property("historically (p -> q since r)", b.predicates());
    b.register_property(*f);
    std::size_t first = b.node_count();
    b.register_property(*f);
    CHECK(b.node_count() == first);
    CompiledMonitor m = b.finalize(TimeModel::Discrete);
    CHECK(m.roots()[0] == m.roots()[1]);
}

TEST_CASE("slot counts follow the window fragmentation bound") {
    // finite upper bound b: ceil(b/2) possible runs plus 1 headroom slot
    CHECK(slot_count(FormulaKind::Once, TimeBound{7, 7}) == 4 + 1);
    CHECK(slot_count(FormulaKind::Once, TimeBound{0, 10}) == 5 + 1);
    CHECK(slot_count(FormulaKind::Since, TimeBound{0, 1}) == 1 + 1);
    // unbounded upper: the origin set collapses to its minimum
    CHECK(slot_count(FormulaKind::Since, TimeBound{3, kTimeInfinity}) == 1);
    CHECK(slot_count(FormulaKind::Historically, TimeBound{}) == 1);
    // stateless kinds carry one output run
    CHECK(slot_count(FormulaKind::Atom, TimeBound{}) == 1);
    CHECK(slot_count(FormulaKind::And, TimeBound{}) == 1);
    CHECK(slot_count(FormulaKind::Previous, TimeBound{}) == 1);
}

TEST_CASE("arena capacity is the exact slot sum of the schedule") {
    CompiledMonitor m = compile({"once[0:10] (p && q)", "pre p || r", "p since[1:4] q"});
    std::size_t total = 0;
    for (const NodeRecord& r : m.schedule()) total += slot_count(r.kind, r.bound);
    CHECK(m.arena_capacity() == total);
    CHECK(buffer_capacity(m.schedule()) == total);
}

TEST_CASE("conjoining properties adds exactly the and-spine") {
    // one shared monitor vs the same properties folded with &&
    const char* texts[3] = {"once[0:3] p", "q since r", "historically (p -> q)"};
    MonitorBuilder multi;
    for (const char* t : texts) multi.register_property(*parse_property(t, multi.predicates()));

    MonitorBuilder folded;
    FormulaPtr all;
    for (const char* t : texts) {
        FormulaPtr f = parse_property(t, folded.predicates());
        all = all ? mk_and(std::move(all), std::move(f)) : std::move(f);
    }
    folded.register_property(*all);
    CHECK(folded.node_count() == multi.node_count() + 2); // m - 1 fresh And nodes
}

TEST_CASE("builder rejects misuse") {
    MonitorBuilder b;
    CHECK_THROWS_AS(b.finalize(TimeModel::Discrete), std::logic_error); // no properties

    MonitorBuilder c;
    FormulaPtr raw = mk_implies(mk_atom("p"), mk_atom("q"));
    CHECK_THROWS_AS(c.register_property(*raw), std::logic_error); // not normalized

    MonitorBuilder d;
    d.register_property(*parse_property("p", d.predicates()));
    d.finalize(TimeModel::Discrete);
    FormulaPtr f = mk_atom("p");
    CHECK_THROWS_AS(d.register_property(*f), std::logic_error); // already finalized
}

#include <random>

#include <doctest.h>

#include "weft/check.hpp"
#include "weft/oracle.hpp"
#include "weft/parser.hpp"

using namespace weft;

namespace {

oracle::Trace trace_pqr(std::initializer_list<const char*> rows) {
    // rows like "101": one char per predicate p, q, r
    oracle::Trace tr;
    tr.predicates = {"p", "q", "r"};
    tr.columns.resize(3);
    for (const char* row : rows)
        for (int i = 0; i < 3; ++i) tr.columns[i].push_back(row[i] == '1');
    return tr;
}

std::vector<bool> run(const char* text, const oracle::Trace& tr) {
    PredicateTable table;
    FormulaPtr f = parse_property(text, table);
    return oracle::eval_all(*f, tr);
}

} // namespace

TEST_CASE("boolean connectives are pointwise") {
    oracle::Trace tr = trace_pqr({"100", "110", "010", "000"});
    CHECK(run("p && q", tr) == std::vector<bool>{0, 1, 0, 0});
    CHECK(run("p || q", tr) == std::vector<bool>{1, 1, 1, 0});
    CHECK(run("!p", tr) == std::vector<bool>{0, 0, 1, 1});
    CHECK(run("p -> q", tr) == std::vector<bool>{0, 1, 1, 1});
    CHECK(run("true", tr) == std::vector<bool>{1, 1, 1, 1});
    CHECK(run("false", tr) == std::vector<bool>{0, 0, 0, 0});
}

TEST_CASE("pre shifts by one and is false at the origin") {
    oracle::Trace tr = trace_pqr({"100", "000", "100"});
    CHECK(run("pre p", tr) == std::vector<bool>{0, 1, 0});
    CHECK(run("pre pre p", tr) == std::vector<bool>{0, 0, 1});
}

TEST_CASE("since requires a strictly earlier witness") {
    //            p q      p q      p q      p q
    oracle::Trace tr = trace_pqr({"010", "100", "100", "000"});
    // q at 0; p holds on (0, t) up to and including 2, breaks at 3
    CHECK(run("p since q", tr) == std::vector<bool>{0, 1, 1, 1});
    // at t=3 the gap (0,3) needs p at 1 and 2: still true; at a later step false
    oracle::Trace tr2 = trace_pqr({"010", "100", "000", "000"});
    CHECK(run("p since q", tr2) == std::vector<bool>{0, 1, 1, 0});
    // q again at the current instant does not count yet
    oracle::Trace tr3 = trace_pqr({"000", "010", "000"});
    CHECK(run("p since q", tr3) == std::vector<bool>{0, 0, 1});
}

TEST_CASE("timed once keeps a sliding window") {
    oracle::Trace tr = trace_pqr({"010", "000", "000", "000", "000"});
    // witness at 0 is visible when 0 lands in [t-3, t-2]
    CHECK(run("once[2:3] q", tr) == std::vector<bool>{0, 0, 0, 1, 0});
    CHECK(run("once[0:2] q", tr) == std::vector<bool>{0, 1, 1, 0, 0});
    CHECK(run("once q", tr) == std::vector<bool>{0, 1, 1, 1, 1});
    // a == b leaves no room between "after a" and "within b"
    CHECK(run("once[3:3] q", tr) == std::vector<bool>{0, 0, 0, 0, 0});
}

TEST_CASE("historically is the dual of once over the negation") {
    oracle::Trace tr = trace_pqr({"100", "100", "100", "000"});
    // vacuous truth at t=0, then all strictly earlier instants must satisfy p
    CHECK(run("historically p", tr) == std::vector<bool>{1, 1, 1, 1});
    oracle::Trace tr2 = trace_pqr({"100", "000", "100", "100"});
    CHECK(run("historically p", tr2) == std::vector<bool>{1, 1, 0, 0});
    CHECK(run("historically[0:1] p", tr2) == std::vector<bool>{1, 1, 0, 1});
}

TEST_CASE("once and historically satisfy the negation duality") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 200; ++round) {
        FormulaPtr child = normalize(*gen_random_formula(rng, 3, 6, 3));
        TimeBound b;
        b.lower = rng() % 5;
        b.upper = rng() % 3 == 0 ? kTimeInfinity : b.lower + rng() % 6;
        FormulaPtr lhs = mk_historically(child->clone(), b);
        FormulaPtr rhs = mk_not(mk_once(mk_not(child->clone()), b));
        oracle::Trace tr;
        tr.predicates = {"p", "q", "r"};
        tr.columns.resize(3);
        std::size_t len = 1 + rng() % 32;
        for (auto& col : tr.columns)
            for (std::size_t t = 0; t < len; ++t) col.push_back(rng() % 2 == 1);
        CHECK(oracle::eval_all(*lhs, tr) == oracle::eval_all(*rhs, tr));
    }
}

TEST_CASE("once is since with a true left side") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 200; ++round) {
        FormulaPtr child = normalize(*gen_random_formula(rng, 3, 6, 3));
        TimeBound b;
        b.lower = rng() % 5;
        b.upper = rng() % 3 == 0 ? kTimeInfinity : b.lower + rng() % 6;
        FormulaPtr lhs = mk_once(child->clone(), b);
        FormulaPtr rhs = mk_since(mk_true(), child->clone(), b);
        oracle::Trace tr = gen_random_trace(rng, 1 + rng() % 32, 3);
        CHECK(oracle::eval_all(*lhs, tr) == oracle::eval_all(*rhs, tr));
    }
}

TEST_CASE("eval_all matches the word-for-word eval at every instant") {
    std::mt19937_64 rng(37);
    for (int round = 0; round < 300; ++round) {
        FormulaPtr f = normalize(*gen_random_formula(rng, 5, 8, 3));
        oracle::Trace tr = gen_random_trace(rng, 1 + rng() % 48, 3);
        std::vector<bool> fast = oracle::eval_all(*f, tr);
        REQUIRE(fast.size() == tr.length());
        for (std::size_t t = 0; t < tr.length(); ++t) {
            CAPTURE(round);
            CAPTURE(t);
            REQUIRE(fast[t] == oracle::eval(*f, tr, t));
        }
    }
}

TEST_CASE("predicates missing from the trace are false") {
    oracle::Trace tr;
    tr.predicates = {"p"};
    tr.columns = {{true, true}};
    CHECK(run("p && !missing", tr) == std::vector<bool>{1, 1});
    CHECK(run("once missing", tr) == std::vector<bool>{0, 0});
}

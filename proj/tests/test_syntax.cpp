#include <random>

#include <doctest.h>

#include "weft/check.hpp"
#include "weft/parser.hpp"

using namespace weft;

namespace {

FormulaPtr parse1(std::string_view text) {
    PredicateTable table;
    return parse_property(text, table);
}

} // namespace

TEST_CASE("operator precedence, loosest to tightest") {
    // -> binds loosest: (a && b) -> (c || d)
    FormulaPtr f = parse1("p && q -> r || s");
    // normalized: !(p && q) || (r || s)
    REQUIRE(f->kind == FormulaKind::Or);
    CHECK(f->left->kind == FormulaKind::Not);
    CHECK(f->left->left->kind == FormulaKind::And);
    CHECK(f->right->kind == FormulaKind::Or);

    // since binds tighter than &&
    FormulaPtr g = parse1("p && q since r");
    REQUIRE(g->kind == FormulaKind::And);
    CHECK(g->right->kind == FormulaKind::Since);

    // unary binds tighter than since: (!p) since (pre q)
    FormulaPtr h = parse1("!p since pre q");
    REQUIRE(h->kind == FormulaKind::Since);
    CHECK(h->left->kind == FormulaKind::Not);
    CHECK(h->right->kind == FormulaKind::Previous);
}

TEST_CASE("associativity") {
    // -> is right-associative: a -> (b -> c)
    FormulaPtr f = parse1("p -> q -> r");
    // !p || (!q || r)
    REQUIRE(f->kind == FormulaKind::Or);
    CHECK(structurally_equal(*f->left, *mk_not(mk_atom("p"))));
    CHECK(f->right->kind == FormulaKind::Or);
    CHECK(f->right->left->kind == FormulaKind::Not);

    // since is left-associative: (p since q) since r
    FormulaPtr g = parse1("p since q since r");
    REQUIRE(g->kind == FormulaKind::Since);
    CHECK(g->left->kind == FormulaKind::Since);
    CHECK(g->right->kind == FormulaKind::Atom);
}

TEST_CASE("a nested property parses to the expected seven-node tree") {
    FormulaPtr f = parse1("historically (p -> q since r)");
    // historically (!p || (q since r))
    REQUIRE(f->kind == FormulaKind::Historically);
    CHECK(f->bound.untimed());
    const Formula& body = *f->left;
    REQUIRE(body.kind == FormulaKind::Or);
    REQUIRE(body.left->kind == FormulaKind::Not);
    CHECK(body.left->left->atom == "p");
    REQUIRE(body.right->kind == FormulaKind::Since);
    CHECK(body.right->left->atom == "q");
    CHECK(body.right->right->atom == "r");
}

TEST_CASE("bound forms") {
    FormulaPtr f = parse1("once[2:5] p");
    CHECK(f->bound.lower == 2);
    CHECK(f->bound.upper == 5);

    FormulaPtr g = parse1("once[:5] p");
    CHECK(g->bound.lower == 0);
    CHECK(g->bound.upper == 5);

    FormulaPtr h = parse1("once[2:] p");
    CHECK(h->bound.lower == 2);
    CHECK(!h->bound.upper_bounded());

    FormulaPtr u = parse1("once[:] p");
    CHECK(u->bound.untimed());

    FormulaPtr s = parse1("p since[3:3] q");
    CHECK(s->bound.lower == 3);
    CHECK(s->bound.upper == 3);
}

TEST_CASE("true is sugar for !false") {
    FormulaPtr f = parse1("true");
    REQUIRE(f->kind == FormulaKind::Not);
    CHECK(f->left->kind == FormulaKind::False);
    CHECK(structurally_equal(*parse1("true"), *mk_true()));
    CHECK(to_text(*mk_true()) == "true");
    CHECK(to_text(*mk_and(mk_true(), mk_atom("p"))) == "true && p");
}

TEST_CASE("parse errors carry line and column") {
    PredicateTable table;
    auto expect_fail = [&](std::string_view text, std::size_t line, std::size_t column) {
        CAPTURE(text);
        try {
            parse_property(text, table);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
            CHECK(e.column == column);
        }
    };
    expect_fail("p &&", 1, 5);          // missing rhs
    expect_fail("p & q", 1, 3);         // stray single ampersand
    expect_fail("once[5:2] p", 1, 5);   // inverted bound, reported at the '['
    expect_fail("(p || q", 1, 8);       // unclosed paren
    expect_fail("p q", 1, 3);           // trailing input
    expect_fail("since p", 1, 1);       // operator cannot start a property
    expect_fail("once[99999999999999999999] p", 1, 6); // bound overflow
}

TEST_CASE("spec files track line numbers and skip comments") {
    PredicateTable table;
    std::vector<SpecProperty> props =
        parse_spec_text("# header\n\np since q\n  \nonce[1:2] r\n", table);
    REQUIRE(props.size() == 2);
    CHECK(props[0].line == 3);
    CHECK(props[1].line == 5);
    CHECK(table.size() == 3);

    try {
        parse_spec_text("p since q\nonce[(] r\n", table);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("printer round-trips random formulas") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 500; ++round) {
        FormulaPtr f = gen_random_formula(rng, 5, 9, 4);
        std::string text = to_text(*f);
        CAPTURE(text);
        FormulaPtr back = parse1(text);
        // the parser normalizes, so compare against the normalized original
        FormulaPtr norm = normalize(*f);
        REQUIRE(structurally_equal(*back, *norm));
        // printing the normalized tree must be a fixed point
        REQUIRE(to_text(*norm) == to_text(*parse1(to_text(*norm))));
    }
}

TEST_CASE("normalize removes every implication and is idempotent") {
    std::mt19937_64 rng(12);
    auto has_implies = [](const Formula& f) {
        auto rec = [](const Formula& g, auto&& self) -> bool {
            if (g.kind == FormulaKind::Implies) return true;
            if (g.left && self(*g.left, self)) return true;
            return g.right && self(*g.right, self);
        };
        return rec(f, rec);
    };
    for (int round = 0; round < 200; ++round) {
        FormulaPtr f = gen_random_formula(rng, 5, 9, 4);
        FormulaPtr n = normalize(*f);
        REQUIRE(!has_implies(*n));
        REQUIRE(structurally_equal(*n, *normalize(*n)));
    }
}

TEST_CASE("printer output honors precedence with minimal parens") {
    CHECK(to_text(*parse1("p && (q || r)")) == "p && (q || r)");
    CHECK(to_text(*parse1("(p && q) || r")) == "p && q || r");
    CHECK(to_text(*parse1("p since (q since r)")) == "p since (q since r)");
    CHECK(to_text(*parse1("once[2:] (p && q)")) == "once[2:] (p && q)");
    CHECK(to_text(*parse1("pre pre p")) == "pre pre p");
}

#include "weft/formula.hpp"

#include <cassert>
#include <utility>

namespace weft {

int arity(FormulaKind kind) {
    switch (kind) {
    case FormulaKind::False:
    case FormulaKind::Atom:
        return 0;
    case FormulaKind::Not:
    case FormulaKind::Previous:
    case FormulaKind::Once:
    case FormulaKind::Historically:
        return 1;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Since:
        return 2;
    }
    return 0;
}

const char* kind_name(FormulaKind kind) {
    switch (kind) {
    case FormulaKind::False: return "false";
    case FormulaKind::Atom: return "atom";
    case FormulaKind::Not: return "not";
    case FormulaKind::And: return "and";
    case FormulaKind::Or: return "or";
    case FormulaKind::Implies: return "implies";
    case FormulaKind::Previous: return "previous";
    case FormulaKind::Since: return "since";
    case FormulaKind::Once: return "once";
    case FormulaKind::Historically: return "historically";
    }
    return "?";
}

FormulaPtr Formula::clone() const {
    auto f = std::make_unique<Formula>();
    f->kind = kind;
    f->atom = atom;
    f->bound = bound;
    if (left) f->left = left->clone();
    if (right) f->right = right->clone();
    return f;
}

namespace {
FormulaPtr make(FormulaKind kind, FormulaPtr l = nullptr, FormulaPtr r = nullptr) {
    auto f = std::make_unique<Formula>();
    f->kind = kind;
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
}
} // namespace

FormulaPtr mk_false() { return make(FormulaKind::False); }
FormulaPtr mk_true() { return mk_not(mk_false()); }

FormulaPtr mk_atom(std::string name) {
    auto f = make(FormulaKind::Atom);
    f->atom = std::move(name);
    return f;
}

FormulaPtr mk_not(FormulaPtr a) { return make(FormulaKind::Not, std::move(a)); }
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::And, std::move(a), std::move(b)); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::Or, std::move(a), std::move(b)); }
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) { return make(FormulaKind::Implies, std::move(a), std::move(b)); }
FormulaPtr mk_previous(FormulaPtr a) { return make(FormulaKind::Previous, std::move(a)); }

FormulaPtr mk_since(FormulaPtr a, FormulaPtr b, TimeBound bound) {
    auto f = make(FormulaKind::Since, std::move(a), std::move(b));
    f->bound = bound;
    return f;
}

FormulaPtr mk_once(FormulaPtr a, TimeBound bound) {
    auto f = make(FormulaKind::Once, std::move(a));
    f->bound = bound;
    return f;
}

FormulaPtr mk_historically(FormulaPtr a, TimeBound bound) {
    auto f = make(FormulaKind::Historically, std::move(a));
    f->bound = bound;
    return f;
}

FormulaPtr normalize(const Formula& f) {
    switch (f.kind) {
    case FormulaKind::Implies:
        return mk_or(mk_not(normalize(*f.left)), normalize(*f.right));
    case FormulaKind::False:
        return mk_false();
    case FormulaKind::Atom:
        return mk_atom(f.atom);
    case FormulaKind::Not:
        return mk_not(normalize(*f.left));
    case FormulaKind::And:
        return mk_and(normalize(*f.left), normalize(*f.right));
    case FormulaKind::Or:
        return mk_or(normalize(*f.left), normalize(*f.right));
    case FormulaKind::Previous:
        return mk_previous(normalize(*f.left));
    case FormulaKind::Since:
        return mk_since(normalize(*f.left), normalize(*f.right), f.bound);
    case FormulaKind::Once:
        return mk_once(normalize(*f.left), f.bound);
    case FormulaKind::Historically:
        return mk_historically(normalize(*f.left), f.bound);
    }
    assert(false);
    return nullptr;
}

bool structurally_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.bound != b.bound || a.atom != b.atom) return false;
    if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
    if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
    if (a.left && !structurally_equal(*a.left, *b.left)) return false;
    if (a.right && !structurally_equal(*a.right, *b.right)) return false;
    return true;
}

// ── printer ──────────────────────────────────────────────────────────────

namespace {

// Binding strength, loosest first.  Matches the parser's precedence table.
enum Prec : int { kImplies = 0, kOr, kAnd, kSince, kUnary, kPrimary };

Prec prec_of(FormulaKind kind) {
    switch (kind) {
    case FormulaKind::Implies: return kImplies;
    case FormulaKind::Or: return kOr;
    case FormulaKind::And: return kAnd;
    case FormulaKind::Since: return kSince;
    case FormulaKind::Not:
    case FormulaKind::Previous:
    case FormulaKind::Once:
    case FormulaKind::Historically: return kUnary;
    case FormulaKind::False:
    case FormulaKind::Atom: return kPrimary;
    }
    return kPrimary;
}

void print_bound(const TimeBound& b, std::string& out) {
    if (b.untimed()) return;
    out += '[';
    out += std::to_string(b.lower);
    out += ':';
    if (b.upper_bounded()) out += std::to_string(b.upper);
    out += ']';
}

bool is_true(const Formula& f) {
    return f.kind == FormulaKind::Not && f.left->kind == FormulaKind::False;
}

void print(const Formula& f, int min_prec, std::string& out) {
    int p = is_true(f) ? kPrimary : prec_of(f.kind);
    bool parens = p < min_prec;
    if (parens) out += '(';
    switch (f.kind) {
    case FormulaKind::False:
        out += "false";
        break;
    case FormulaKind::Atom:
        out += f.atom;
        break;
    case FormulaKind::Not:
        // !false is the canonical spelling of true; print it that way.
        if (f.left->kind == FormulaKind::False) {
            out += "true";
        } else {
            out += '!';
            print(*f.left, kUnary, out);
        }
        break;
    case FormulaKind::Previous:
        out += "pre ";
        print(*f.left, kUnary, out);
        break;
    case FormulaKind::Once:
    case FormulaKind::Historically:
        out += f.kind == FormulaKind::Once ? "once" : "historically";
        print_bound(f.bound, out);
        out += ' ';
        print(*f.left, kUnary, out);
        break;
    case FormulaKind::Since:
        print(*f.left, kSince, out); // left-associative
        out += " since";
        print_bound(f.bound, out);
        out += ' ';
        print(*f.right, kSince + 1, out);
        break;
    case FormulaKind::And:
    case FormulaKind::Or: {
        const char* op = f.kind == FormulaKind::And ? " && " : " || ";
        print(*f.left, p, out); // left-associative
        out += op;
        print(*f.right, p + 1, out);
        break;
    }
    case FormulaKind::Implies:
        print(*f.left, kImplies + 1, out); // right-associative
        out += " -> ";
        print(*f.right, kImplies, out);
        break;
    }
    if (parens) out += ')';
}

} // namespace

std::string to_text(const Formula& f) {
    std::string out;
    print(f, kImplies, out);
    return out;
}

// ── predicate table ──────────────────────────────────────────────────────

std::uint32_t PredicateTable::intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

std::optional<std::uint32_t> PredicateTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

} // namespace weft

#pragma once

// ============================================================================
//  formula -- front-end syntax trees for past-time properties
//
//  Plain ownership trees, built by the parser or programmatically through the
//  mk_* helpers.  Implies is surface syntax only: normalize() rewrites
//  a -> b into !a || b and is the step that makes a tree acceptable to the
//  compiler.  "true" is represented as !false throughout, so there is no
//  True kind.  Trees are cheap and transient; sharing happens later, in the
//  compiled node database, not here.
// ============================================================================

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "weft/time.hpp"

namespace weft {

enum class FormulaKind : std::uint8_t {
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,      // surface only; removed by normalize()
    Previous,
    Since,        // carries a TimeBound; untimed is lower=0, upper=infinity
    Once,         // derived operator kept first-class; carries a TimeBound
    Historically, // likewise
};

// 0 = leaf, 1 = unary (child in left), 2 = binary.
int arity(FormulaKind kind);

const char* kind_name(FormulaKind kind);

struct Formula;
using FormulaPtr = std::unique_ptr<Formula>;

struct Formula {
    FormulaKind kind;
    std::string atom;   // Atom only
    TimeBound bound;    // Since/Once/Historically only
    FormulaPtr left;    // unary child or binary lhs
    FormulaPtr right;   // binary rhs

    FormulaPtr clone() const;
};

FormulaPtr mk_false();
FormulaPtr mk_true(); // !false
FormulaPtr mk_atom(std::string name);
FormulaPtr mk_not(FormulaPtr a);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_previous(FormulaPtr a);
FormulaPtr mk_since(FormulaPtr a, FormulaPtr b, TimeBound bound = {});
FormulaPtr mk_once(FormulaPtr a, TimeBound bound = {});
FormulaPtr mk_historically(FormulaPtr a, TimeBound bound = {});

// Rewrites Implies away (a -> b becomes !a || b), recursively.  Everything
// else is rebuilt unchanged; the result shares no nodes with the input.
FormulaPtr normalize(const Formula& f);

bool structurally_equal(const Formula& a, const Formula& b);

// Round-trippable concrete syntax.  Parenthesizes only where precedence
// requires it; parse(to_text(f)) is structurally equal to f.
std::string to_text(const Formula& f);

// Maps predicate names to dense indices in first-registration order.
class PredicateTable {
public:
    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    const std::string& name(std::uint32_t index) const { return names_[index]; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

} // namespace weft

#pragma once

// ============================================================================
//  parser -- concrete syntax for properties and spec files
//
//  Grammar, loosest binding first:
//      implies :=  or  ( '->' implies )?              right-associative
//      or      :=  and ( '||' and )*
//      and     :=  since ( '&&' since )*
//      since   :=  unary ( 'since' bound? unary )*    left-associative
//      unary   :=  ('!' | 'pre' | 'once' bound? | 'historically' bound?) unary
//               |  primary
//      primary :=  name | 'true' | 'false' | '(' implies ')'
//      bound   :=  '[' integer? ':' integer? ']'
//
//  Names are [A-Za-z_][A-Za-z0-9_]*; the five keywords are reserved.  An
//  absent lower bound is 0, an absent upper bound is unbounded, so [:] is
//  the untimed bound.  Parsing registers every atom in the caller's
//  predicate table and returns the tree already normalized (no Implies).
// ============================================================================

#include <string_view>
#include <vector>

#include "weft/errors.hpp"
#include "weft/formula.hpp"

namespace weft {

// One property per call.  `line` seeds error positions when the text came
// from a larger file.
FormulaPtr parse_property(std::string_view text, PredicateTable& predicates,
                          std::size_t line = 1);

struct SpecProperty {
    FormulaPtr formula;
    std::size_t line; // 1-based source line, for diagnostics
};

// Spec file: one property per line, blank lines and '#' comments ignored.
// Property indices in external output are 1-based in order of appearance.
std::vector<SpecProperty> parse_spec_text(std::string_view text, PredicateTable& predicates);

} // namespace weft

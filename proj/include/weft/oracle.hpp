#pragma once

// ============================================================================
//  oracle -- executable reference semantics over whole traces
//
//  Evaluates a formula at an instant by direct recursion over the defining
//  clauses, quantifiers as loops.  Cost is ignored on purpose: this module
//  exists to adjudicate the engine, so it shares none of its machinery, and
//  when the two disagree the oracle wins.  All temporal obligations look
//  strictly into the past; nothing at the current instant is visible to
//  pre/since/once/historically, so every verdict at t = 0 falls out of the
//  empty-range cases below.
// ============================================================================

#include <string_view>
#include <vector>

#include "weft/formula.hpp"

namespace weft {
namespace oracle {

// A finite trace as per-predicate Boolean columns.  Predicates the formula
// mentions but the trace does not are false everywhere.
struct Trace {
    std::vector<std::string> predicates;
    std::vector<std::vector<bool>> columns; // one per predicate, equal lengths

    std::size_t length() const { return columns.empty() ? 0 : columns[0].size(); }
    bool value(std::string_view name, std::size_t t) const;
};

// Verdict of f at instant t (t < trace.length()).  f must be normalized.
bool eval(const Formula& f, const Trace& trace, std::size_t t);

// Verdicts at every instant of the trace.
std::vector<bool> eval_all(const Formula& f, const Trace& trace);

} // namespace oracle
} // namespace weft

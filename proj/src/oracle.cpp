#include "weft/oracle.hpp"

#include <cassert>
#include <stdexcept>

namespace weft {
namespace oracle {

bool Trace::value(std::string_view name, std::size_t t) const {
    for (std::size_t i = 0; i < predicates.size(); ++i)
        if (predicates[i] == name) return columns[i][t];
    return false;
}

namespace {

// t' is an admissible witness instant for (t, bound): strictly in the past
// and within [t - upper, t - lower - 1].  Saturating comparisons keep the
// unbounded case exact.
bool witness_in_window(std::size_t tp, std::size_t t, const TimeBound& b) {
    if (tp >= t) return false;
    if (sat_add(tp, b.upper) < t) return false; // tp < t - upper
    if (sat_add(tp, b.lower) >= t) return false; // tp > t - lower - 1
    return true;
}

} // namespace

bool eval(const Formula& f, const Trace& trace, std::size_t t) {
    switch (f.kind) {
    case FormulaKind::False:
        return false;
    case FormulaKind::Atom:
        return trace.value(f.atom, t);
    case FormulaKind::Not:
        return !eval(*f.left, trace, t);
    case FormulaKind::And:
        return eval(*f.left, trace, t) && eval(*f.right, trace, t);
    case FormulaKind::Or:
        return eval(*f.left, trace, t) || eval(*f.right, trace, t);
    case FormulaKind::Previous:
        return t > 0 && eval(*f.left, trace, t - 1);
    case FormulaKind::Since:
        // exists t' < t with the rhs, the lhs everywhere strictly between,
        // and t' inside the bound window.
        for (std::size_t tp = 0; tp < t; ++tp) {
            if (!witness_in_window(tp, t, f.bound)) continue;
            if (!eval(*f.right, trace, tp)) continue;
            bool gap_ok = true;
            for (std::size_t u = tp + 1; u < t && gap_ok; ++u)
                gap_ok = eval(*f.left, trace, u);
            if (gap_ok) return true;
        }
        return false;
    case FormulaKind::Once:
        // true since (child), with the always-true lhs dropped.
        for (std::size_t tp = 0; tp < t; ++tp)
            if (witness_in_window(tp, t, f.bound) && eval(*f.left, trace, tp)) return true;
        return false;
    case FormulaKind::Historically:
        // dual of Once: no witness instant may violate the child; an empty
        // window is vacuously true.
        for (std::size_t tp = 0; tp < t; ++tp)
            if (witness_in_window(tp, t, f.bound) && !eval(*f.left, trace, tp)) return false;
        return true;
    case FormulaKind::Implies:
        throw std::logic_error("oracle requires a normalized formula (found ->)");
    }
    assert(false);
    return false;
}

// Same clauses computed column-wise: each subformula's verdicts are
// materialized once and the quantifier loops run over them, which removes
// the re-recursion per instant but changes nothing semantically.  eval()
// stays the word-for-word reference; the unit tests hold the two equal.
std::vector<bool> eval_all(const Formula& f, const Trace& trace) {
    const std::size_t n = trace.length();
    std::vector<bool> out(n, false);
    switch (f.kind) {
    case FormulaKind::False:
        break;
    case FormulaKind::Atom:
        for (std::size_t t = 0; t < n; ++t) out[t] = trace.value(f.atom, t);
        break;
    case FormulaKind::Not: {
        std::vector<bool> a = eval_all(*f.left, trace);
        for (std::size_t t = 0; t < n; ++t) out[t] = !a[t];
        break;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<bool> a = eval_all(*f.left, trace);
        std::vector<bool> b = eval_all(*f.right, trace);
        for (std::size_t t = 0; t < n; ++t)
            out[t] = f.kind == FormulaKind::And ? (a[t] && b[t]) : (a[t] || b[t]);
        break;
    }
    case FormulaKind::Previous: {
        std::vector<bool> a = eval_all(*f.left, trace);
        for (std::size_t t = 1; t < n; ++t) out[t] = a[t - 1];
        break;
    }
    case FormulaKind::Since: {
        std::vector<bool> xs = eval_all(*f.left, trace);
        std::vector<bool> ys = eval_all(*f.right, trace);
        for (std::size_t t = 0; t < n; ++t) {
            // scan candidate witnesses downward; once the lhs fails, no
            // earlier witness can see through the gap
            for (std::size_t tp = t; tp-- > 0;) {
                if (witness_in_window(tp, t, f.bound) && ys[tp]) {
                    out[t] = true;
                    break;
                }
                if (!xs[tp]) break;
            }
        }
        break;
    }
    case FormulaKind::Once: {
        std::vector<bool> a = eval_all(*f.left, trace);
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t tp = 0; tp < t; ++tp)
                if (witness_in_window(tp, t, f.bound) && a[tp]) {
                    out[t] = true;
                    break;
                }
        break;
    }
    case FormulaKind::Historically: {
        std::vector<bool> a = eval_all(*f.left, trace);
        for (std::size_t t = 0; t < n; ++t) {
            out[t] = true;
            for (std::size_t tp = 0; tp < t; ++tp)
                if (witness_in_window(tp, t, f.bound) && !a[tp]) {
                    out[t] = false;
                    break;
                }
        }
        break;
    }
    case FormulaKind::Implies:
        throw std::logic_error("oracle requires a normalized formula (found ->)");
    }
    return out;
}

} // namespace oracle
} // namespace weft

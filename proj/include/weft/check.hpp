#pragma once

// ============================================================================
//  check -- randomized differential testing of the engine against the oracle
//
//  Each case draws a random formula and a random trace, runs the compiled
//  monitor step by step and compares every verdict with the reference
//  semantics.  The first disagreement is reported with enough material to
//  replay it by hand.  Deterministic for a given configuration.
// ============================================================================

#include <cstdint>
#include <random>
#include <string>

#include "weft/formula.hpp"
#include "weft/oracle.hpp"

namespace weft {

struct CheckConfig {
    std::uint64_t cases = 1000;
    std::uint64_t seed = 42;
    int max_depth = 5;        // operator nesting
    TimePoint max_bound = 8;  // bound values drawn from [0, max_bound]
    std::size_t max_len = 64; // trace length drawn from [1, max_len]
    std::size_t predicates = 3;
};

struct CheckResult {
    std::uint64_t cases_run = 0;
    bool ok = true;
    std::string counterexample; // human-readable; empty when ok
};

CheckResult run_differential(const CheckConfig& config);

// Shared with tests: a random formula over the first `predicates` names of
// p, q, r, s, t_, ... with operator depth at most max_depth.  May contain ->
// (normalize before compiling).
FormulaPtr gen_random_formula(std::mt19937_64& rng, int max_depth, TimePoint max_bound,
                              std::size_t predicates);

// Random Bernoulli(0.5) trace over the same names.
oracle::Trace gen_random_trace(std::mt19937_64& rng, std::size_t length,
                               std::size_t predicates);

} // namespace weft

#include "weft/check.hpp"

#include <array>

#include "weft/compiler.hpp"
#include "weft/engine.hpp"

namespace weft {

namespace {

const std::array<const char*, 6> kPredNames = {"p", "q", "r", "s", "u", "v"};

TimeBound gen_bound(std::mt19937_64& rng, TimePoint max_bound) {
    TimeBound b;
    if (rng() % 10 < 3) return b; // untimed
    b.lower = rng() % (max_bound + 1);
    if (rng() % 4 == 0) return b; // lower bound only
    b.upper = b.lower + rng() % (max_bound - b.lower + 1);
    return b;
}

} // namespace

FormulaPtr gen_random_formula(std::mt19937_64& rng, int max_depth, TimePoint max_bound,
                              std::size_t predicates) {
    if (max_depth <= 0 || rng() % 5 == 0) {
        if (rng() % 8 == 0) return rng() % 2 ? mk_true() : mk_false();
        return mk_atom(kPredNames[rng() % std::min(predicates, kPredNames.size())]);
    }
    auto sub = [&] { return gen_random_formula(rng, max_depth - 1, max_bound, predicates); };
    switch (rng() % 8) {
    case 0: return mk_not(sub());
    case 1: return mk_and(sub(), sub());
    case 2: return mk_or(sub(), sub());
    case 3: return mk_implies(sub(), sub());
    case 4: return mk_previous(sub());
    case 5: return mk_since(sub(), sub(), gen_bound(rng, max_bound));
    case 6: return mk_once(sub(), gen_bound(rng, max_bound));
    default: return mk_historically(sub(), gen_bound(rng, max_bound));
    }
}

oracle::Trace gen_random_trace(std::mt19937_64& rng, std::size_t length,
                               std::size_t predicates) {
    oracle::Trace tr;
    for (std::size_t i = 0; i < std::min(predicates, kPredNames.size()); ++i) {
        tr.predicates.emplace_back(kPredNames[i]);
        std::vector<bool> col(length);
        for (std::size_t t = 0; t < length; ++t) col[t] = rng() % 2 == 1;
        tr.columns.push_back(std::move(col));
    }
    return tr;
}

CheckResult run_differential(const CheckConfig& config) {
    std::mt19937_64 rng(config.seed);
    CheckResult res;
    for (std::uint64_t c = 0; c < config.cases; ++c) {
        FormulaPtr raw = gen_random_formula(rng, config.max_depth, config.max_bound,
                                            config.predicates);
        FormulaPtr f = normalize(*raw);
        std::size_t len = 1 + rng() % config.max_len;
        oracle::Trace trace = gen_random_trace(rng, len, config.predicates);

        std::vector<bool> expected = oracle::eval_all(*f, trace);

        MonitorBuilder builder;
        builder.register_property(*f);
        CompiledMonitor monitor = builder.finalize(TimeModel::Discrete);
        EvalSession session(monitor);

        const PredicateTable& table = monitor.predicates();
        std::vector<std::uint8_t> row(table.size(), 0);
        ++res.cases_run;
        for (std::size_t t = 0; t < len; ++t) {
            for (std::uint32_t i = 0; i < table.size(); ++i)
                row[i] = trace.value(table.name(i), t) ? 1 : 0;
            std::span<const std::uint8_t> verdicts = session.step({t, row});
            bool got = verdicts[0] != 0;
            if (got != expected[t]) {
                res.ok = false;
                std::string& msg = res.counterexample;
                msg = "case " + std::to_string(c) + ": engine disagrees with oracle\n";
                msg += "  formula: " + to_text(*f) + "\n";
                msg += "  step " + std::to_string(t) + ": engine=" + (got ? "1" : "0") +
                       " oracle=" + (expected[t] ? "1" : "0") + "\n";
                for (std::size_t i = 0; i < trace.predicates.size(); ++i) {
                    msg += "  " + trace.predicates[i] + " = ";
                    for (std::size_t u = 0; u < len; ++u)
                        msg += trace.columns[i][u] ? '1' : '0';
                    msg += "\n";
                }
                return res;
            }
        }
    }
    return res;
}

} // namespace weft

#include "weft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include <json.hpp>

#include "weft/engine.hpp"
#include "weft/io.hpp"
#include "weft/parser.hpp"

namespace weft {

const char* scenario_name(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::BestCaseShared: return "best-case-shared";
    case ScenarioKind::NestedBest: return "nested-best";
    case ScenarioKind::WorstUnique: return "worst-unique";
    case ScenarioKind::NestedWorst: return "nested-worst";
    case ScenarioKind::AdversarialAlternating: return "adversarial-alternating";
    }
    return "?";
}

bool scenario_from_name(const std::string& name, ScenarioKind& out) {
    for (ScenarioKind k : {ScenarioKind::BestCaseShared, ScenarioKind::NestedBest,
                           ScenarioKind::WorstUnique, ScenarioKind::NestedWorst,
                           ScenarioKind::AdversarialAlternating}) {
        if (name == scenario_name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

std::size_t scenario_default_count(ScenarioKind kind) {
    return kind == ScenarioKind::AdversarialAlternating ? 3 : 10;
}

std::vector<std::string> gen_scenario(ScenarioKind kind, std::size_t count, std::uint64_t) {
    std::vector<std::string> out;
    out.reserve(count);
    switch (kind) {
    case ScenarioKind::BestCaseShared:
        // A 9-node core repeated verbatim; only the upper bound of the
        // trailing once-window moves.
        for (std::size_t k = 1; k <= count; ++k)
            out.push_back("historically(once[0:10] q -> !p since r) || once[0:" +
                          std::to_string(k) + "] p");
        break;
    case ScenarioKind::NestedBest: {
        // L_k = L_{k-1} || s_k with s_k cycling p, q, r; property k is
        // historically L_k, so each property reuses the whole previous chain.
        static const char* cycle[3] = {"p", "q", "r"};
        std::string chain = "(p || q)";
        out.push_back("historically " + chain);
        for (std::size_t k = 2; k <= count; ++k) {
            chain = "(" + chain + " || " + cycle[k % 3] + ")";
            out.push_back("historically " + chain);
        }
        break;
    }
    case ScenarioKind::WorstUnique:
        // Every temporal operator carries a property-specific bound, so only
        // the atoms and the one conjunction can dedupe.
        for (std::size_t k = 1; k <= count; ++k) {
            std::string ks = std::to_string(k);
            out.push_back("historically[" + ks + ":" + std::to_string(k + 30) + "](once[" + ks +
                          ":" + std::to_string(k + 10) + "](p && q) -> (r since[" + ks + ":" +
                          std::to_string(k + 20) + "] q))");
        }
        break;
    case ScenarioKind::NestedWorst:
        // Property k conjoins k once-windows; bounds encode (k, j) in base
        // count + 1 so no two coincide.
        for (std::size_t k = 1; k <= count; ++k) {
            static const char* cycle[3] = {"q", "(p && q)", "r"};
            std::string text;
            for (std::size_t j = 1; j <= k; ++j) {
                if (j > 1) text += " && ";
                text += "once[0:" + std::to_string((count + 1) * k + j) + "]" + cycle[j % 3];
            }
            out.push_back(text);
        }
        break;
    case ScenarioKind::AdversarialAlternating:
        // Point windows once[b:b] with b = 3, 7, 15, ...
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t b = (2ull << (i + 1)) - 1;
            out.push_back("once[" + std::to_string(b) + ":" + std::to_string(b) + "] q");
        }
        break;
    }
    return out;
}

std::vector<std::string> gen_soak_properties() {
    // Four classic monitoring patterns, each at three window scales.  r is
    // the trigger event, p the payload, q the response witness.
    std::vector<std::string> out;
    out.reserve(12);
    for (std::uint64_t s : {10ull, 100ull, 1000ull}) {
        std::string w = "[0:" + std::to_string(s) + "]";
        out.push_back("historically (r -> historically" + w + " !p)"); // absence after r
        out.push_back("historically (r -> historically" + w + " p)");  // invariance after r
        out.push_back("once" + w + " p");                              // recurrence
        out.push_back("historically (q -> once" + w + " p)");          // response witness
    }
    return out;
}

// ── traces ───────────────────────────────────────────────────────────────

TraceData gen_uniform_trace(std::vector<std::string> predicates, std::uint64_t steps,
                            std::uint64_t seed, double density) {
    TraceData tr;
    tr.predicates = std::move(predicates);
    tr.model = TimeModel::Discrete;
    tr.times.reserve(steps);
    tr.rows.reserve(steps);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution flip(density);
    for (std::uint64_t t = 0; t < steps; ++t) {
        tr.times.push_back(t);
        std::vector<std::uint8_t> row(tr.predicates.size());
        for (auto& v : row) v = flip(rng) ? 1 : 0;
        tr.rows.push_back(std::move(row));
    }
    return tr;
}

TraceData gen_alternating_trace(std::vector<std::string> predicates, std::uint64_t steps) {
    TraceData tr;
    tr.predicates = std::move(predicates);
    tr.model = TimeModel::Discrete;
    for (std::uint64_t t = 0; t < steps; ++t) {
        tr.times.push_back(t);
        tr.rows.emplace_back(tr.predicates.size(),
                             static_cast<std::uint8_t>(t % 2 == 0 ? 1 : 0));
    }
    return tr;
}

TraceData gen_dense_trace(std::vector<std::string> predicates, TimePoint horizon,
                          std::uint64_t seed, double mean_len, double density) {
    TraceData tr;
    tr.predicates = std::move(predicates);
    tr.model = TimeModel::Dense;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution flip(density);
    std::geometric_distribution<std::uint64_t> gap(1.0 / mean_len);
    TimePoint t = 0;
    std::vector<std::uint8_t> row(tr.predicates.size(), 0);
    while (t < horizon) {
        for (auto& v : row) v = flip(rng) ? 1 : 0;
        tr.times.push_back(t);
        tr.rows.push_back(row);
        t += gap(rng) + 1;
    }
    // horizon record: closes the last segment, values unused
    tr.times.push_back(horizon);
    tr.rows.push_back(row);
    return tr;
}

TraceData gen_scenario_trace(ScenarioKind kind, TimeModel model, std::uint64_t steps,
                             std::uint64_t seed) {
    std::vector<std::string> preds =
        kind == ScenarioKind::AdversarialAlternating ? std::vector<std::string>{"q"}
                                                     : std::vector<std::string>{"p", "q", "r"};
    if (model == TimeModel::Dense) return gen_dense_trace(std::move(preds), steps, seed);
    if (kind == ScenarioKind::AdversarialAlternating)
        return gen_alternating_trace(std::move(preds), steps);
    return gen_uniform_trace(std::move(preds), steps, seed);
}

std::vector<char> encode_trace(const TraceData& trace, TraceFormat format) {
    std::vector<char> bytes;
    MemorySink sink(bytes);
    if (format == TraceFormat::Json) {
        JsonTraceWriter w(sink, trace.predicates);
        for (std::size_t i = 0; i < trace.times.size(); ++i) w.record(trace.times[i], trace.rows[i]);
    } else {
        BinaryTraceWriter w(sink, trace.predicates, trace.model);
        for (std::size_t i = 0; i < trace.times.size(); ++i) w.record(trace.times[i], trace.rows[i]);
    }
    return bytes;
}

// ── measured runs ────────────────────────────────────────────────────────

const char* bench_mode_name(BenchMode mode) {
    switch (mode) {
    case BenchMode::Sequential: return "sequential";
    case BenchMode::AndConjoined: return "and";
    case BenchMode::Multi: return "multi";
    }
    return "?";
}

bool bench_mode_from_name(const std::string& name, BenchMode& out) {
    for (BenchMode m : {BenchMode::Sequential, BenchMode::AndConjoined, BenchMode::Multi}) {
        if (name == bench_mode_name(m)) {
            out = m;
            return true;
        }
    }
    return false;
}

std::size_t shared_node_count(const std::vector<std::string>& properties) {
    MonitorBuilder b;
    for (const std::string& text : properties)
        b.register_property(*parse_property(text, b.predicates()));
    return b.node_count();
}

std::size_t independent_node_count(const std::vector<std::string>& properties) {
    std::size_t total = 0;
    for (const std::string& text : properties) {
        MonitorBuilder b;
        b.register_property(*parse_property(text, b.predicates()));
        total += b.node_count();
    }
    return total;
}

namespace {

CompiledMonitor build_multi(const std::vector<std::string>& texts, TimeModel tm) {
    MonitorBuilder b;
    for (const std::string& text : texts)
        b.register_property(*parse_property(text, b.predicates()));
    return b.finalize(tm);
}

CompiledMonitor build_conjoined(const std::vector<std::string>& texts, TimeModel tm) {
    MonitorBuilder b;
    FormulaPtr all;
    for (const std::string& text : texts) {
        FormulaPtr f = parse_property(text, b.predicates());
        all = all ? mk_and(std::move(all), std::move(f)) : std::move(f);
    }
    b.register_property(*all);
    return b.finalize(tm);
}

CompiledMonitor build_single(const std::string& text, TimeModel tm) {
    MonitorBuilder b;
    b.register_property(*parse_property(text, b.predicates()));
    return b.finalize(tm);
}

struct ChecksumSink final : VerdictSink {
    std::uint64_t* sums;
    explicit ChecksumSink(std::uint64_t* s) : sums(s) {}
    void interval(std::uint32_t property, TimePoint begin, TimePoint end) override {
        sums[property] = fnv1a_u64(fnv1a_u64(sums[property], begin), end);
    }
};

// Replays the encoded trace through one session, folding per-root verdict
// checksums.  Decoding is deliberately inside: a pass is parse plus step.
template <class Reader>
void pump(Reader& reader, EvalSession& session, std::uint64_t* sums) {
    const CompiledMonitor& mon = session.monitor();
    if (mon.time_model() == TimeModel::Discrete) {
        std::vector<std::uint8_t> row(mon.predicates().size(), 0);
        TimePoint t = 0;
        const std::size_t m = mon.property_count();
        while (reader.next(t, row)) {
            std::span<const std::uint8_t> v = session.step({t, row});
            for (std::size_t k = 0; k < m; ++k) sums[k] = fnv1a_byte(sums[k], v[k]);
        }
    } else {
        ChecksumSink sink(sums);
        feed_dense(reader, session, sink);
    }
}

void replay(const std::vector<char>& bytes, TraceFormat format, EvalSession& session,
            std::uint64_t* sums) {
    MemorySource src({bytes.data(), bytes.size()});
    if (format == TraceFormat::Json) {
        JsonTraceReader reader(src, session.monitor().predicates(), session.monitor().time_model());
        pump(reader, session, sums);
    } else {
        BinaryTraceReader reader(src, session.monitor().predicates(), session.monitor().time_model());
        pump(reader, session, sums);
    }
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    if (n == 0) return 0.0;
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

} // namespace

BenchReport run_bench(const BenchConfig& config) {
    const std::size_t count =
        config.properties ? config.properties : scenario_default_count(config.scenario);
    const std::vector<std::string> texts = gen_scenario(config.scenario, count, config.seed);
    const TraceData trace =
        gen_scenario_trace(config.scenario, config.time_model, config.steps, config.seed);
    const std::vector<char> bytes = encode_trace(trace, config.format);

    BenchReport rep;
    rep.scenario = scenario_name(config.scenario);
    rep.mode = bench_mode_name(config.mode);
    rep.time_model = config.time_model == TimeModel::Dense ? "dense" : "discrete";
    rep.format = config.format == TraceFormat::Json ? "json" : "binary";
    rep.properties = count;
    rep.steps = config.steps;
    rep.shared_nodes = shared_node_count(texts);
    rep.independent_nodes = independent_node_count(texts);
    rep.compression = static_cast<double>(rep.independent_nodes) /
                      static_cast<double>(rep.shared_nodes);

    std::vector<CompiledMonitor> monitors;
    switch (config.mode) {
    case BenchMode::Multi:
        monitors.push_back(build_multi(texts, config.time_model));
        break;
    case BenchMode::AndConjoined:
        monitors.push_back(build_conjoined(texts, config.time_model));
        break;
    case BenchMode::Sequential:
        for (const std::string& text : texts) monitors.push_back(build_single(text, config.time_model));
        break;
    }
    std::size_t sum_count = 0;
    for (const CompiledMonitor& m : monitors) {
        rep.executed_nodes += m.schedule().size();
        rep.arena_capacity += m.arena_capacity();
        sum_count += m.property_count();
    }
    rep.checksums.assign(sum_count, 0);

    for (int r = 0; r < config.runs; ++r) {
        std::vector<EvalSession> sessions;
        sessions.reserve(monitors.size());
        for (const CompiledMonitor& m : monitors) sessions.emplace_back(m);
        for (auto& s : rep.checksums) s = fnv1a_init();

        std::uint64_t allocs0 = heap_alloc_count();
        auto t0 = std::chrono::steady_clock::now();
        std::size_t sum_at = 0;
        for (EvalSession& session : sessions) {
            replay(bytes, config.format, session, rep.checksums.data() + sum_at);
            sum_at += session.monitor().property_count();
        }
        auto t1 = std::chrono::steady_clock::now();
        rep.heap_allocs = heap_alloc_count() - allocs0;
        rep.run_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());

        if (r == config.runs - 1) {
            rep.arena_high_water = 0;
            for (EvalSession& session : sessions)
                rep.arena_high_water += session.stats().arena_high_water;
        }
    }
    rep.seconds = median(rep.run_seconds);
    return rep;
}

std::string report_to_json(const BenchReport& rep) {
    nlohmann::json j;
    j["scenario"] = rep.scenario;
    j["mode"] = rep.mode;
    j["time_model"] = rep.time_model;
    j["format"] = rep.format;
    j["properties"] = rep.properties;
    j["shared_nodes"] = rep.shared_nodes;
    j["independent_nodes"] = rep.independent_nodes;
    j["executed_nodes"] = rep.executed_nodes;
    j["compression"] = rep.compression;
    j["steps"] = rep.steps;
    j["seconds_median"] = rep.seconds;
    j["run_seconds"] = rep.run_seconds;
    char buf[24];
    std::vector<std::string> sums;
    sums.reserve(rep.checksums.size());
    for (std::uint64_t c : rep.checksums) {
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(c));
        sums.emplace_back(buf);
    }
    j["checksums"] = sums;
    j["arena_capacity"] = rep.arena_capacity;
    j["arena_high_water"] = rep.arena_high_water;
    j["heap_allocs_measured"] = rep.heap_allocs;
    return j.dump(2) + "\n";
}

} // namespace weft

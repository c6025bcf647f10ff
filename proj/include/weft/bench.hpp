#pragma once

// ============================================================================
//  bench -- canned workloads for compression and throughput measurements
//
//  Scenario generators produce deterministic property sets over the fixed
//  predicates p, q, r:
//
//    best-case-shared        one large core formula shared by every
//                            property; only a small once-window differs.
//    nested-best             property k is historically over a disjunction
//                            chain L_k = L_{k-1} || s_k, so each property
//                            extends the previous one's DAG by two nodes.
//    worst-unique            per-property bounds on every temporal operator;
//                            only the atoms and one conjunction dedupe.
//    nested-worst            property k conjoins k once-windows whose bounds
//                            encode (k, j), so almost nothing is shared.
//    adversarial-alternating point-window properties once[b:b] q with
//                            b = 3, 7, 15, ...; with the alternating trace
//                            they fragment their origin sets maximally.
//
//  The runner compiles a scenario three ways (one shared multi-property
//  monitor, one and-conjunction, or one monitor per property), replays the
//  same encoded trace from memory through each, and reports node counts,
//  median wall time over several runs, and per-property verdict checksums.
//  Decoding is inside the measured region; monitor and session construction
//  are not.
// ============================================================================

#include <cstdint>
#include <string>
#include <vector>

#include "weft/compiler.hpp"
#include "weft/time.hpp"

namespace weft {

enum class ScenarioKind {
    BestCaseShared,
    NestedBest,
    WorstUnique,
    NestedWorst,
    AdversarialAlternating,
};

const char* scenario_name(ScenarioKind kind);
// Accepts the names printed by scenario_name; returns false on no match.
bool scenario_from_name(const std::string& name, ScenarioKind& out);

// Deterministic property texts; seed is reserved for future randomized
// scenarios and currently unused.
std::vector<std::string> gen_scenario(ScenarioKind kind, std::size_t count,
                                      std::uint64_t seed = 0);

// Default property count per scenario (3 for the point-window set, else 10).
std::size_t scenario_default_count(ScenarioKind kind);

// Twelve soak-test templates: absence, invariance, recurrence and response
// patterns over p/q/r at window scales 10, 100 and 1000.  Not a scenario;
// they exist to push long-windowed state through long runs.
std::vector<std::string> gen_soak_properties();

// ── traces ───────────────────────────────────────────────────────────────

enum class TraceFormat : std::uint8_t { Json, Binary };

struct TraceData {
    std::vector<std::string> predicates;
    TimeModel model = TimeModel::Discrete;
    std::vector<TimePoint> times;
    std::vector<std::vector<std::uint8_t>> rows;
};

// Independent Bernoulli(density) per predicate per step.
TraceData gen_uniform_trace(std::vector<std::string> predicates, std::uint64_t steps,
                            std::uint64_t seed, double density = 0.5);

// Every predicate true at even instants, false at odd ones.
TraceData gen_alternating_trace(std::vector<std::string> predicates, std::uint64_t steps);

// Dense trace over [0, horizon): segments of geometric mean length mean_len
// with a fresh Bernoulli(density) row each; the final record carries the
// horizon.
TraceData gen_dense_trace(std::vector<std::string> predicates, TimePoint horizon,
                          std::uint64_t seed, double mean_len = 8.0, double density = 0.5);

// The trace a scenario is normally driven with (alternating for the
// point-window scenario, uniform otherwise; dense variant for dense runs).
TraceData gen_scenario_trace(ScenarioKind kind, TimeModel model, std::uint64_t steps,
                             std::uint64_t seed);

std::vector<char> encode_trace(const TraceData& trace, TraceFormat format);

// ── measured runs ────────────────────────────────────────────────────────

enum class BenchMode { Sequential, AndConjoined, Multi };

const char* bench_mode_name(BenchMode mode);
bool bench_mode_from_name(const std::string& name, BenchMode& out);

struct BenchConfig {
    ScenarioKind scenario = ScenarioKind::BestCaseShared;
    BenchMode mode = BenchMode::Multi;
    TimeModel time_model = TimeModel::Discrete;
    TraceFormat format = TraceFormat::Binary;
    std::size_t properties = 0; // 0: scenario default
    std::uint64_t steps = 100000; // discrete steps, or dense horizon
    std::uint64_t seed = 1;
    int runs = 5;
};

struct BenchReport {
    std::string scenario;
    std::string mode;
    std::string time_model;
    std::string format;
    std::size_t properties = 0;
    std::size_t shared_nodes = 0;      // multi-property DAG
    std::size_t independent_nodes = 0; // sum of per-property DAGs
    std::size_t executed_nodes = 0;    // schedule size(s) actually run
    double compression = 0.0;          // independent_nodes / shared_nodes
    std::uint64_t steps = 0;
    std::vector<double> run_seconds;   // every run, in run order
    double seconds = 0.0;              // median of run_seconds
    std::vector<std::uint64_t> checksums; // per property (one entry if conjoined)
    std::size_t arena_capacity = 0;    // summed over executing monitors
    std::size_t arena_high_water = 0;
    std::uint64_t heap_allocs = 0;     // inside the measured region, last run
};

BenchReport run_bench(const BenchConfig& config);

std::string report_to_json(const BenchReport& report);

// Node counts without running: the shared DAG size and the sum of
// independent per-property compilations.
std::size_t shared_node_count(const std::vector<std::string>& properties);
std::size_t independent_node_count(const std::vector<std::string>& properties);

constexpr std::uint64_t fnv1a_init() { return 14695981039346656037ull; }
constexpr std::uint64_t fnv1a_byte(std::uint64_t h, std::uint8_t b) {
    return (h ^ b) * 1099511628211ull;
}
constexpr std::uint64_t fnv1a_u64(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) h = fnv1a_byte(h, static_cast<std::uint8_t>(v >> (8 * i)));
    return h;
}

} // namespace weft

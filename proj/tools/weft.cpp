// weft -- compile past-time properties into a shared monitor and run it
// over traces.  Exit codes: 0 success, 1 usage, 2 property parse error,
// 3 data error (malformed trace, missing file, failed check).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weft/bench.hpp"
#include "weft/check.hpp"
#include "weft/compiler.hpp"
#include "weft/engine.hpp"
#include "weft/io.hpp"
#include "weft/parser.hpp"

namespace {

constexpr const char* kVersion = "weft 0.1.0 (binary trace format v1)";

struct CheckFailed {}; // counterexample found; exit 3 after printing

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw weft::DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Closer {
    std::FILE* f = nullptr;
    bool owned = false;
    ~Closer() {
        if (owned && f) std::fclose(f);
    }
};

std::FILE* open_read(const std::string& path, Closer& c) {
    c.f = std::fopen(path.c_str(), "rb");
    if (!c.f) throw weft::DataError("cannot open " + path);
    c.owned = true;
    return c.f;
}

std::FILE* open_write(const std::string& path, Closer& c) {
    if (path.empty() || path == "-") {
        c.f = stdout;
        return c.f;
    }
    c.f = std::fopen(path.c_str(), "wb");
    if (!c.f) throw weft::DataError("cannot open " + path + " for writing");
    c.owned = true;
    return c.f;
}

weft::TimeModel parse_time_model(const std::string& s) {
    return s == "dense" ? weft::TimeModel::Dense : weft::TimeModel::Discrete;
}

weft::TraceFormat parse_format(const std::string& s) {
    return s == "binary" ? weft::TraceFormat::Binary : weft::TraceFormat::Json;
}

weft::CompiledMonitor compile_spec(const std::string& path, weft::TimeModel tm,
                                   weft::MonitorBuilder& builder) {
    std::string text = read_file(path);
    std::vector<weft::SpecProperty> props = weft::parse_spec_text(text, builder.predicates());
    if (props.empty()) throw weft::DataError(path + " contains no properties");
    for (const weft::SpecProperty& p : props) builder.register_property(*p.formula);
    return builder.finalize(tm);
}

void print_bound(const weft::TimeBound& b) {
    if (b.untimed()) return;
    std::printf("[%llu:", static_cast<unsigned long long>(b.lower));
    if (b.upper_bounded()) std::printf("%llu", static_cast<unsigned long long>(b.upper));
    std::printf("]");
}

int cmd_compile(const std::string& spec_path, const std::string& time_model) {
    weft::MonitorBuilder builder;
    weft::CompiledMonitor monitor = compile_spec(spec_path, parse_time_model(time_model), builder);

    // per-property independent sizes, for the dedup summary
    std::string text = read_file(spec_path);
    weft::PredicateTable scratch;
    std::vector<weft::SpecProperty> props = weft::parse_spec_text(text, scratch);
    std::size_t independent = 0;
    std::printf("properties: %zu\n", props.size());
    for (std::size_t i = 0; i < props.size(); ++i) {
        weft::MonitorBuilder one;
        one.register_property(*props[i].formula);
        independent += one.node_count();
        std::printf("  %zu: %s  (%zu nodes alone)\n", i + 1, to_text(*props[i].formula).c_str(),
                    one.node_count());
    }
    std::size_t shared = monitor.schedule().size();
    std::printf("shared nodes: %zu (vs %zu independent, compression %.2f)\n", shared, independent,
                static_cast<double>(independent) / static_cast<double>(shared));
    std::printf("arena capacity: %zu slots per buffer\n", monitor.arena_capacity());
    std::printf("schedule:\n");
    for (std::size_t i = 0; i < monitor.schedule().size(); ++i) {
        const weft::NodeRecord& r = monitor.schedule()[i];
        std::printf("  [%3zu] %s", i, weft::kind_name(r.kind));
        print_bound(r.bound);
        if (r.kind == weft::FormulaKind::Atom) {
            std::printf(" %s", monitor.predicates().name(r.predicate).c_str());
        } else if (weft::arity(r.kind) == 1) {
            std::printf(" (%u)", r.left);
        } else if (weft::arity(r.kind) == 2) {
            std::printf(" (%u, %u)", r.left, r.right);
        }
        std::printf("  slots=%u\n", r.state_slots + r.output_slots);
    }
    std::printf("roots:");
    for (std::uint32_t root : monitor.roots()) std::printf(" %u", root);
    std::printf("\n");
    return 0;
}

int cmd_run(const std::string& spec_path, const std::string& trace_path,
            const std::string& format, const std::string& time_model,
            const std::string& out_path, bool stats) {
    weft::TimeModel tm = parse_time_model(time_model);
    weft::MonitorBuilder builder;
    weft::CompiledMonitor monitor = compile_spec(spec_path, tm, builder);
    weft::EvalSession session(monitor);

    Closer in_c, out_c;
    weft::FileSource src(open_read(trace_path, in_c));
    weft::FileSink sink(open_write(out_path, out_c));

    weft::FeedResult fed;
    if (tm == weft::TimeModel::Discrete) {
        weft::DiscreteVerdictWriter writer(sink);
        if (parse_format(format) == weft::TraceFormat::Json) {
            weft::JsonTraceReader reader(src, monitor.predicates(), tm);
            fed = weft::feed_discrete(reader, session, &writer);
        } else {
            weft::BinaryTraceReader reader(src, monitor.predicates(), tm);
            fed = weft::feed_discrete(reader, session, &writer);
        }
    } else {
        weft::DenseVerdictWriter writer(sink, monitor.property_count());
        if (parse_format(format) == weft::TraceFormat::Json) {
            weft::JsonTraceReader reader(src, monitor.predicates(), tm);
            fed = weft::feed_dense(reader, session, writer);
        } else {
            weft::BinaryTraceReader reader(src, monitor.predicates(), tm);
            fed = weft::feed_dense(reader, session, writer);
        }
        writer.finish();
    }

    if (fed.unknown_predicates > 0)
        std::fprintf(stderr, "warning: ignored %llu value(s) for unknown predicate(s), first \"%s\"\n",
                     static_cast<unsigned long long>(fed.unknown_predicates),
                     fed.first_unknown.c_str());
    if (stats) {
        weft::SessionStats st = session.stats();
        std::fprintf(stderr,
                     "records=%llu steps=%llu node_evals=%llu arena=%zu/%zu heap_allocs=%llu\n",
                     static_cast<unsigned long long>(fed.records),
                     static_cast<unsigned long long>(st.steps),
                     static_cast<unsigned long long>(st.node_evals), st.arena_high_water,
                     st.arena_capacity, static_cast<unsigned long long>(st.heap_allocs));
    }
    return 0;
}

int cmd_check(std::uint64_t cases, std::uint64_t seed, int max_depth, std::uint64_t max_bound,
              std::size_t max_len, std::size_t predicates) {
    weft::CheckConfig cfg;
    cfg.cases = cases;
    cfg.seed = seed;
    cfg.max_depth = max_depth;
    cfg.max_bound = max_bound;
    cfg.max_len = max_len;
    cfg.predicates = predicates;
    weft::CheckResult res = weft::run_differential(cfg);
    if (!res.ok) {
        std::fprintf(stderr, "%s", res.counterexample.c_str());
        throw CheckFailed{};
    }
    std::printf("ok: %llu differential cases, engine matches oracle\n",
                static_cast<unsigned long long>(res.cases_run));
    return 0;
}

int cmd_bench(const std::string& scenario, const std::string& mode, const std::string& time_model,
              const std::string& format, std::size_t count, std::uint64_t steps,
              std::uint64_t seed, int runs, const std::string& report_path) {
    weft::BenchConfig cfg;
    if (!weft::scenario_from_name(scenario, cfg.scenario))
        throw CLI::ValidationError("--scenario", "unknown scenario " + scenario);
    if (!weft::bench_mode_from_name(mode, cfg.mode))
        throw CLI::ValidationError("--mode", "unknown mode " + mode);
    cfg.time_model = parse_time_model(time_model);
    cfg.format = parse_format(format);
    cfg.properties = count;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.runs = runs;
    weft::BenchReport rep = weft::run_bench(cfg);
    std::string json = weft::report_to_json(rep);
    Closer out_c;
    std::FILE* out = open_write(report_path, out_c);
    std::fwrite(json.data(), 1, json.size(), out);
    return 0;
}

int cmd_gen_trace(const std::string& kind, std::uint64_t steps, std::uint64_t seed,
                  double density, double mean_len, const std::string& predicates,
                  const std::string& format, const std::string& out_path) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : predicates + ",") {
        if (c == ',') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    weft::TraceData trace;
    if (kind == "uniform") {
        trace = weft::gen_uniform_trace(std::move(names), steps, seed, density);
    } else if (kind == "alternating") {
        trace = weft::gen_alternating_trace(std::move(names), steps);
    } else if (kind == "dense") {
        trace = weft::gen_dense_trace(std::move(names), steps, seed, mean_len, density);
    } else {
        throw CLI::ValidationError("--kind", "unknown trace kind " + kind);
    }
    std::vector<char> bytes = weft::encode_trace(trace, parse_format(format));
    Closer out_c;
    std::FILE* out = open_write(out_path, out_c);
    std::fwrite(bytes.data(), 1, bytes.size(), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shared-monitor runtime verification for past-time properties"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // compile
    auto* compile = app.add_subcommand("compile", "compile a spec and dump the shared schedule");
    std::string c_spec, c_tm = "discrete";
    compile->add_option("--spec", c_spec, "property file, one per line")->required();
    compile->add_option("--time-model", c_tm)->check(CLI::IsMember({"discrete", "dense"}));

    // run
    auto* run = app.add_subcommand("run", "evaluate a spec over a trace");
    std::string r_spec, r_trace, r_format = "json", r_tm = "discrete", r_out;
    bool r_stats = false;
    run->add_option("--spec", r_spec)->required();
    run->add_option("--trace", r_trace)->required();
    run->add_option("--format", r_format)->check(CLI::IsMember({"json", "binary"}));
    run->add_option("--time-model", r_tm)->check(CLI::IsMember({"discrete", "dense"}));
    run->add_option("--out", r_out, "verdict output file (default stdout)");
    run->add_flag("--stats", r_stats, "print session statistics to stderr");

    // check
    auto* check = app.add_subcommand("check", "randomized differential test against the oracle");
    std::uint64_t k_cases = 1000, k_seed = 42, k_bound = 8;
    int k_depth = 5;
    std::size_t k_len = 64, k_preds = 3;
    check->add_option("--cases", k_cases);
    check->add_option("--seed", k_seed);
    check->add_option("--max-depth", k_depth);
    check->add_option("--max-bound", k_bound);
    check->add_option("--max-len", k_len);
    check->add_option("--predicates", k_preds)->check(CLI::Range(std::size_t{1}, std::size_t{6}));

    // bench
    auto* bench = app.add_subcommand("bench", "run a canned scenario and report timings");
    std::string b_scenario = "best-case-shared", b_mode = "multi", b_tm = "discrete",
                b_format = "binary", b_report;
    std::size_t b_count = 0;
    std::uint64_t b_steps = 100000, b_seed = 1;
    int b_runs = 5;
    bench->add_option("--scenario", b_scenario,
                      "best-case-shared | nested-best | worst-unique | nested-worst | "
                      "adversarial-alternating");
    bench->add_option("--mode", b_mode, "sequential | and | multi");
    bench->add_option("--time-model", b_tm)->check(CLI::IsMember({"discrete", "dense"}));
    bench->add_option("--format", b_format)->check(CLI::IsMember({"json", "binary"}));
    bench->add_option("--count", b_count, "property count (0: scenario default)");
    bench->add_option("--steps", b_steps, "steps, or horizon in dense mode");
    bench->add_option("--seed", b_seed);
    bench->add_option("--runs", b_runs);
    bench->add_option("--report", b_report, "write the JSON report here (default stdout)");

    // gen-trace
    auto* gen = app.add_subcommand("gen-trace", "generate a synthetic trace");
    std::string g_kind = "uniform", g_preds = "p,q,r", g_format = "json", g_out;
    std::uint64_t g_steps = 1000, g_seed = 1;
    double g_density = 0.5, g_mean = 8.0;
    gen->add_option("--kind", g_kind, "uniform | alternating | dense");
    gen->add_option("--steps", g_steps, "steps, or horizon for dense traces");
    gen->add_option("--seed", g_seed);
    gen->add_option("--density", g_density);
    gen->add_option("--mean-segment", g_mean, "mean dense segment length");
    gen->add_option("--predicates", g_preds, "comma-separated names");
    gen->add_option("--format", g_format)->check(CLI::IsMember({"json", "binary"}));
    gen->add_option("--out", g_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (compile->parsed()) return cmd_compile(c_spec, c_tm);
        if (run->parsed()) return cmd_run(r_spec, r_trace, r_format, r_tm, r_out, r_stats);
        if (check->parsed()) return cmd_check(k_cases, k_seed, k_depth, k_bound, k_len, k_preds);
        if (bench->parsed())
            return cmd_bench(b_scenario, b_mode, b_tm, b_format, b_count, b_steps, b_seed, b_runs,
                             b_report);
        if (gen->parsed())
            return cmd_gen_trace(g_kind, g_steps, g_seed, g_density, g_mean, g_preds, g_format,
                                 g_out);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems exit 1; --help/--version exit 0
    } catch (const weft::ParseError& e) {
        std::fprintf(stderr, "parse error at line %zu, column %zu: %s\n", e.line, e.column,
                     e.what());
        return 2;
    } catch (const weft::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const CheckFailed&) {
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}

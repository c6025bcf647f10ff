#include <random>

#include <doctest.h>

#include "weft/alloc_count.hpp"
#include "weft/bench.hpp"
#include "weft/compiler.hpp"
#include "weft/engine.hpp"
#include "weft/parser.hpp"

using namespace weft;

TEST_CASE("scenario texts are deterministic and well formed") {
    for (ScenarioKind kind : {ScenarioKind::BestCaseShared, ScenarioKind::NestedBest,
                              ScenarioKind::WorstUnique, ScenarioKind::NestedWorst,
                              ScenarioKind::AdversarialAlternating}) {
        std::size_t count = scenario_default_count(kind);
        std::vector<std::string> a = gen_scenario(kind, count);
        std::vector<std::string> b = gen_scenario(kind, count);
        REQUIRE(a.size() == count);
        CHECK(a == b);
        PredicateTable table;
        for (const std::string& text : a) CHECK_NOTHROW(parse_property(text, table));
    }
}

TEST_CASE("scenario shapes") {
    std::vector<std::string> nested = gen_scenario(ScenarioKind::NestedBest, 3);
    CHECK(nested[0] == "historically (p || q)");
    CHECK(nested[1] == "historically ((p || q) || r)");
    CHECK(nested[2] == "historically (((p || q) || r) || p)");

    std::vector<std::string> adv = gen_scenario(ScenarioKind::AdversarialAlternating, 3);
    CHECK(adv[0] == "once[3:3] q");
    CHECK(adv[1] == "once[7:7] q");
    CHECK(adv[2] == "once[15:15] q");

    // every worst-unique property carries its own bounds
    std::vector<std::string> worst = gen_scenario(ScenarioKind::WorstUnique, 4);
    for (std::size_t i = 0; i < worst.size(); ++i)
        for (std::size_t j = i + 1; j < worst.size(); ++j) CHECK(worst[i] != worst[j]);
}

TEST_CASE("node counts for the canned scenarios are frozen") {
    struct Row {
        ScenarioKind kind;
        std::size_t shared;
        std::size_t independent;
    };
    // shared DAG size vs the sum of per-property compilations, count = 10
    const Row rows[] = {
        {ScenarioKind::BestCaseShared, 29, 110},
        {ScenarioKind::NestedBest, 23, 94},
        {ScenarioKind::WorstUnique, 54, 90},
        {ScenarioKind::NestedWorst, 104, 139},
    };
    for (const Row& row : rows) {
        std::vector<std::string> texts = gen_scenario(row.kind, 10);
        CAPTURE(scenario_name(row.kind));
        CHECK(shared_node_count(texts) == row.shared);
        CHECK(independent_node_count(texts) == row.independent);
    }
}

TEST_CASE("uniform traces are seed-stable, alternating traces strictly toggle") {
    TraceData a = gen_uniform_trace({"p", "q"}, 50, 9, 0.5);
    TraceData b = gen_uniform_trace({"p", "q"}, 50, 9, 0.5);
    CHECK(a.rows == b.rows);
    REQUIRE(a.times.size() == 50);
    CHECK(a.times.front() == 0);
    CHECK(a.times.back() == 49);

    TraceData alt = gen_alternating_trace({"q"}, 6);
    for (std::uint64_t t = 0; t < 6; ++t) CHECK(alt.rows[t][0] == (t % 2 == 0 ? 1 : 0));
}

TEST_CASE("dense traces close at the horizon with plausible segmentation") {
    constexpr TimePoint kHorizon = 10000;
    TraceData tr = gen_dense_trace({"p"}, kHorizon, 3, 8.0, 0.5);
    REQUIRE(tr.times.size() >= 2);
    CHECK(tr.times.front() == 0);
    CHECK(tr.times.back() == kHorizon);
    for (std::size_t i = 1; i < tr.times.size(); ++i) REQUIRE(tr.times[i] > tr.times[i - 1]);
    // mean segment length 8: expect segments within a factor of two of n/8
    std::size_t segments = tr.times.size() - 1;
    CHECK(segments > kHorizon / 16);
    CHECK(segments < kHorizon / 4);
}

TEST_CASE("bench runs produce matching checksums across modes") {
    BenchConfig cfg;
    cfg.scenario = ScenarioKind::BestCaseShared;
    cfg.steps = 4000;
    cfg.runs = 1;
    cfg.mode = BenchMode::Multi;
    BenchReport multi = run_bench(cfg);
    cfg.mode = BenchMode::Sequential;
    BenchReport seq = run_bench(cfg);

    REQUIRE(multi.checksums.size() == 10);
    CHECK(multi.checksums == seq.checksums);
    CHECK(multi.executed_nodes == 29);
    CHECK(seq.executed_nodes == 110);
    CHECK(multi.compression == doctest::Approx(110.0 / 29.0));
    CHECK(multi.run_seconds.size() == 1);
    CHECK(multi.arena_high_water <= multi.arena_capacity);

    // distinct properties must not all agree: the checksums should differ
    bool all_same = true;
    for (std::size_t k = 1; k < multi.checksums.size(); ++k)
        if (multi.checksums[k] != multi.checksums[0]) all_same = false;
    CHECK(!all_same);
}

TEST_CASE("and-conjoined runs fold every property into one verdict stream") {
    BenchConfig cfg;
    cfg.scenario = ScenarioKind::NestedBest;
    cfg.steps = 2000;
    cfg.runs = 1;
    cfg.mode = BenchMode::AndConjoined;
    BenchReport rep = run_bench(cfg);
    CHECK(rep.checksums.size() == 1);
    CHECK(rep.executed_nodes > shared_node_count(gen_scenario(ScenarioKind::NestedBest, 10)));
}

TEST_CASE("dense bench runs agree between multi and sequential") {
    BenchConfig cfg;
    cfg.scenario = ScenarioKind::NestedWorst;
    cfg.time_model = TimeModel::Dense;
    cfg.steps = 3000;
    cfg.runs = 1;
    cfg.mode = BenchMode::Multi;
    BenchReport multi = run_bench(cfg);
    cfg.mode = BenchMode::Sequential;
    BenchReport seq = run_bench(cfg);
    CHECK(multi.checksums == seq.checksums);
}

TEST_CASE("json and binary transports yield the same verdict checksums") {
    BenchConfig cfg;
    cfg.scenario = ScenarioKind::WorstUnique;
    cfg.steps = 2000;
    cfg.runs = 1;
    cfg.format = TraceFormat::Binary;
    BenchReport bin = run_bench(cfg);
    cfg.format = TraceFormat::Json;
    BenchReport json = run_bench(cfg);
    CHECK(bin.checksums == json.checksums);
}

TEST_CASE("reports serialize the headline numbers") {
    BenchConfig cfg;
    cfg.scenario = ScenarioKind::AdversarialAlternating;
    cfg.steps = 500;
    cfg.runs = 2;
    BenchReport rep = run_bench(cfg);
    std::string json = report_to_json(rep);
    CHECK(json.find("\"scenario\": \"adversarial-alternating\"") != std::string::npos);
    CHECK(json.find("\"seconds_median\"") != std::string::npos);
    CHECK(json.find("\"checksums\"") != std::string::npos);
    CHECK(rep.run_seconds.size() == 2);
}

TEST_CASE("mode and scenario names round-trip") {
    for (ScenarioKind k : {ScenarioKind::BestCaseShared, ScenarioKind::NestedBest,
                           ScenarioKind::WorstUnique, ScenarioKind::NestedWorst,
                           ScenarioKind::AdversarialAlternating}) {
        ScenarioKind back;
        REQUIRE(scenario_from_name(scenario_name(k), back));
        CHECK(back == k);
    }
    for (BenchMode m : {BenchMode::Sequential, BenchMode::AndConjoined, BenchMode::Multi}) {
        BenchMode back;
        REQUIRE(bench_mode_from_name(bench_mode_name(m), back));
        CHECK(back == m);
    }
    ScenarioKind sk;
    BenchMode bm;
    CHECK(!scenario_from_name("bogus", sk));
    CHECK(!bench_mode_from_name("bogus", bm));
}

TEST_CASE("soak templates drive kilostep windows without divergence or allocation") {
    std::vector<std::string> texts = gen_soak_properties();
    REQUIRE(texts.size() == 12);
    for (std::size_t i = 0; i < texts.size(); ++i)
        for (std::size_t j = i + 1; j < texts.size(); ++j) CHECK(texts[i] != texts[j]);

    MonitorBuilder b;
    for (const std::string& t : texts) b.register_property(*parse_property(t, b.predicates()));
    CompiledMonitor multi = b.finalize(TimeModel::Discrete);
    EvalSession shared(multi);

    std::vector<CompiledMonitor> singles;
    singles.reserve(texts.size());
    for (const std::string& t : texts) {
        MonitorBuilder one;
        one.register_property(*parse_property(t, one.predicates()));
        singles.push_back(one.finalize(TimeModel::Discrete));
    }
    std::vector<EvalSession> sessions;
    sessions.reserve(singles.size());
    for (const CompiledMonitor& m : singles) sessions.emplace_back(m);

    const std::size_t n = multi.predicates().size();
    std::vector<std::uint8_t> row(n);
    // single monitors may order predicates differently; remap by name once
    std::vector<std::vector<std::size_t>> remap(singles.size());
    std::vector<std::vector<std::uint8_t>> single_rows(singles.size());
    for (std::size_t k = 0; k < singles.size(); ++k) {
        const PredicateTable& table = singles[k].predicates();
        for (std::uint32_t i = 0; i < table.size(); ++i) {
            auto idx = multi.predicates().find(table.name(i));
            REQUIRE(idx);
            remap[k].push_back(*idx);
        }
        single_rows[k].resize(table.size());
    }
    std::mt19937_64 rng(77);
    std::uint64_t guard = 0; // armed after warm-up
    bool diverged = false;
    for (TimePoint t = 0; t < 20000; ++t) {
        if (t == 256) guard = heap_alloc_count();
        for (auto& v : row) v = rng() % 2;
        std::span<const std::uint8_t> got = shared.step({t, row});
        for (std::size_t k = 0; k < sessions.size(); ++k) {
            for (std::size_t i = 0; i < remap[k].size(); ++i)
                single_rows[k][i] = row[remap[k][i]];
            if (sessions[k].step({t, single_rows[k]})[0] != got[k]) diverged = true;
        }
    }
    CHECK(!diverged);
    CHECK(heap_alloc_count() - guard == 0);
    SessionStats st = shared.stats();
    CHECK(st.arena_high_water <= st.arena_capacity);
}

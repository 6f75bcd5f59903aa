// Microbenchmarks for the enumeration core and the text formats. The cap
// arguments mirror the published sweep ranges; counts are asserted so a
// broken engine cannot post a fast number.

#include <benchmark/benchmark.h>

#include <string>

#include "attackpath/engine.hpp"
#include "attackpath/fixtures.hpp"
#include "attackpath/model_format.hpp"
#include "attackpath/path_record.hpp"

using namespace attackpath;
using fixtures::FixtureId;

namespace {

EnumerationStats run_fixture(FixtureId id, int cap, bool count_only, bool trace = false) {
    auto model = fixtures::builtin_model(id);
    RunConfig config;
    config.start = fixtures::fixture_start(id);
    config.end = fixtures::fixture_end(id);
    config.link_cap = cap;
    config.count_only = count_only;
    config.trace_enabled = trace;
    return enumerate_paths(model, config).stats;
}

void BM_CountModel1(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto stats = run_fixture(FixtureId::Model1, cap, true);
        if (stats.final_paths != static_cast<std::uint64_t>(2 * cap + 1)) {
            state.SkipWithError("wrong count");
        }
    }
}
BENCHMARK(BM_CountModel1)->DenseRange(1, 5);

void BM_CountModel2(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    std::uint64_t records = 0;
    for (auto _ : state) {
        auto stats = run_fixture(FixtureId::Model2, cap, true);
        records = stats.trace_records;
        benchmark::DoNotOptimize(stats.final_paths);
    }
    state.counters["paths_per_s"] =
        benchmark::Counter(static_cast<double>(records), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_CountModel2)->DenseRange(1, 8);

void BM_CountModel3(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto stats = run_fixture(FixtureId::Model3, cap, true);
        benchmark::DoNotOptimize(stats.final_paths);
    }
}
BENCHMARK(BM_CountModel3)->DenseRange(1, 4);

void BM_TraceModel2(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    auto model = fixtures::builtin_model(FixtureId::Model2);
    RunConfig config;
    config.start = fixtures::fixture_start(FixtureId::Model2);
    config.end = fixtures::fixture_end(FixtureId::Model2);
    config.link_cap = cap;
    config.trace_enabled = true;
    std::size_t bytes = 0;
    for (auto _ : state) {
        std::size_t produced = 0;
        enumerate_paths(model, config,
                        [&](const PathRecord& r) { produced += serialize_record(r).size(); });
        bytes = produced;
        benchmark::DoNotOptimize(produced);
    }
    state.counters["trace_bytes"] = static_cast<double>(bytes);
}
BENCHMARK(BM_TraceModel2)->DenseRange(1, 4);

void BM_ParseModel3(benchmark::State& state) {
    std::string text = serialize_model(fixtures::builtin_model(FixtureId::Model3));
    for (auto _ : state) {
        auto result = parse_model(text);
        if (!result.ok()) state.SkipWithError("parse failed");
        benchmark::DoNotOptimize(result);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseModel3);

void BM_SerializeModel3(benchmark::State& state) {
    auto model = fixtures::builtin_model(FixtureId::Model3);
    for (auto _ : state) {
        auto text = serialize_model(model);
        benchmark::DoNotOptimize(text);
    }
}
BENCHMARK(BM_SerializeModel3);

void BM_RecordRoundTrip(benchmark::State& state) {
    const std::string line =
        "C001,L001,R001;C002,L002,R002;C001,L003,R003;C003,L008,R004;"
        "C004UL005UL007|F001T,F003T,F002T,F004T,F005T";
    for (auto _ : state) {
        auto parsed = parse_record(line);
        if (!parsed.ok()) state.SkipWithError("parse failed");
        auto text = serialize_record(*parsed.record);
        benchmark::DoNotOptimize(text);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * line.size()));
}
BENCHMARK(BM_RecordRoundTrip);

}  // namespace

BENCHMARK_MAIN();

// Command-line front end: validate model files, run enumerations with
// trace/filter/count options, and sweep link caps into a benchmark table.
//
// Exit codes: 0 success, 1 bad flags, 2 invalid model or filter file,
// 3 I/O failure, 4 timeout.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "attackpath/engine.hpp"
#include "attackpath/filters.hpp"
#include "attackpath/fixtures.hpp"
#include "attackpath/model_format.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidModel = 2;
constexpr int kExitIo = 3;
constexpr int kExitTimeout = 4;

struct IoError {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw IoError{"cannot open " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError{"cannot read " + path};
    return buffer.str();
}

void print_diagnostics(const std::string& path, const std::vector<attackpath::Diagnostic>& ds) {
    for (const auto& d : ds) {
        std::cerr << path << ": " << attackpath::format_diagnostic(d) << "\n";
    }
}

// Loaded model or a process exit code.
std::optional<attackpath::NetworkModel> load_model(const std::string& path, int& exit_code) {
    attackpath::ParseModelResult parsed;
    try {
        parsed = attackpath::parse_model(read_file(path));
    } catch (const IoError& e) {
        std::cerr << "error: " << e.message << "\n";
        exit_code = kExitIo;
        return std::nullopt;
    }
    print_diagnostics(path, parsed.diagnostics);
    if (!parsed.ok()) {
        exit_code = kExitInvalidModel;
        return std::nullopt;
    }
    return std::move(parsed.model);
}

std::string format_seconds(std::chrono::duration<double> elapsed) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f s", elapsed.count());
    return buf;
}

int cmd_validate(const std::string& model_path) {
    int exit_code = kExitOk;
    auto model = load_model(model_path, exit_code);
    if (!model) return exit_code;
    std::cout << "model ok: " << model->containers().size() << " containers, "
              << model->facts().size() << " facts, " << model->links().size() << " links, "
              << model->rules().size() << " rules, " << model->properties().size()
              << " properties\n";
    return kExitOk;
}

struct RunOptions {
    std::string model_path;
    std::string start;
    std::string end;
    int link_cap = 1;
    std::string trace_path;
    std::string filters_path;
    bool count_only = false;
    double timeout_seconds = 0.0;
};

int cmd_run(const RunOptions& options) {
    int exit_code = kExitOk;
    auto model = load_model(options.model_path, exit_code);
    if (!model) return exit_code;

    auto start = attackpath::parse_entity_id(options.start);
    auto end = attackpath::parse_entity_id(options.end);
    if (!start || start->kind != attackpath::EntityKind::Container || !model->find_container(*start)) {
        std::cerr << "error: --start must name a container of the model\n";
        return kExitUsage;
    }
    if (!end || end->kind != attackpath::EntityKind::Container || !model->find_container(*end)) {
        std::cerr << "error: --end must name a container of the model\n";
        return kExitUsage;
    }

    std::vector<attackpath::Filter> filters;
    if (!options.filters_path.empty()) {
        attackpath::ParseFiltersResult parsed;
        try {
            parsed = attackpath::parse_filters(read_file(options.filters_path));
        } catch (const IoError& e) {
            std::cerr << "error: " << e.message << "\n";
            return kExitIo;
        }
        print_diagnostics(options.filters_path, parsed.diagnostics);
        if (!parsed.ok()) return kExitInvalidModel;
        filters = std::move(*parsed.filters);
        auto report = attackpath::validate_filter_set(filters, *model);
        if (!report.ok()) {
            for (const auto& issue : report.issues) {
                std::cerr << options.filters_path << ": error: " << issue.message << "\n";
            }
            return kExitInvalidModel;
        }
    }

    attackpath::RunConfig config;
    config.start = *start;
    config.end = *end;
    config.link_cap = options.link_cap;
    config.count_only = options.count_only;
    config.trace_enabled = !options.trace_path.empty();
    if (options.timeout_seconds > 0.0) {
        config.timeout = std::chrono::duration<double>(options.timeout_seconds);
    }

    std::ofstream trace_out;
    attackpath::RecordSink sink;
    if (config.trace_enabled) {
        trace_out.open(options.trace_path, std::ios::binary);
        if (!trace_out.good()) {
            std::cerr << "error: cannot open " << options.trace_path << " for writing\n";
            return kExitIo;
        }
        sink = [&](const attackpath::PathRecord& record) {
            trace_out << attackpath::serialize_record(record);
        };
    }

    auto result = attackpath::enumerate_paths(*model, config, sink);

    if (config.trace_enabled) {
        trace_out.flush();
        if (!trace_out.good()) {
            std::cerr << "error: failed writing " << options.trace_path << "\n";
            return kExitIo;
        }
    }

    std::cout << "final paths: " << result.stats.final_paths << "\n";
    if (!filters.empty()) {
        auto kept = attackpath::apply_filters(result.final_paths, filters, *model);
        std::cout << "filtered paths: " << kept.size() << "\n";
    }
    std::cout << "trace records: " << result.stats.trace_records << "\n";
    std::cout << "max depth: " << result.stats.max_depth << "\n";
    std::cout << "elapsed: " << format_seconds(result.stats.elapsed) << "\n";

    if (!result.stats.completed) {
        std::cerr << "error: run did not complete within " << options.timeout_seconds
                  << " s; counts above are partial\n";
        return kExitTimeout;
    }
    return kExitOk;
}

struct BenchOptions {
    int model = 1;
    std::string caps = "1..3";
    double timeout_seconds = 0.0;
    std::string format = "text";
};

// One sweep row; a timed-out run carries no count.
struct BenchRow {
    int cap;
    std::optional<std::uint64_t> final_paths;
    std::chrono::duration<double> elapsed;
    bool completed;
};

bool parse_cap_range(const std::string& text, int& lo, int& hi) {
    auto at = text.find("..");
    try {
        if (at == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, at));
            hi = std::stoi(text.substr(at + 2));
        }
    } catch (...) {
        return false;
    }
    return lo >= 1 && hi >= lo;
}

int cmd_bench(const BenchOptions& options) {
    int lo = 0;
    int hi = 0;
    if (!parse_cap_range(options.caps, lo, hi)) {
        std::cerr << "error: --caps wants A..B with 1 <= A <= B\n";
        return kExitUsage;
    }
    auto fixture = options.model == 1   ? attackpath::fixtures::FixtureId::Model1
                   : options.model == 2 ? attackpath::fixtures::FixtureId::Model2
                                        : attackpath::fixtures::FixtureId::Model3;
    auto model = attackpath::fixtures::builtin_model(fixture);
    auto start = attackpath::fixtures::fixture_start(fixture);
    auto end = attackpath::fixtures::fixture_end(fixture);

    std::vector<BenchRow> report;
    for (int cap = lo; cap <= hi; ++cap) {
        attackpath::RunConfig config;
        config.start = start;
        config.end = end;
        config.link_cap = cap;
        config.count_only = true;
        if (options.timeout_seconds > 0.0) {
            config.timeout = std::chrono::duration<double>(options.timeout_seconds);
        }
        auto result = attackpath::enumerate_paths(model, config);
        BenchRow row{cap, std::nullopt, result.stats.elapsed, result.stats.completed};
        if (result.stats.completed) row.final_paths = result.stats.final_paths;
        report.push_back(row);
    }

    if (options.format == "csv") {
        std::cout << "cap,final_paths,elapsed_ms,completed\n";
        for (const auto& row : report) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(row.elapsed);
            std::cout << row.cap << ",";
            if (row.final_paths) std::cout << *row.final_paths;
            std::cout << "," << ms.count() << "," << (row.completed ? "true" : "false") << "\n";
        }
    } else {
        std::cout << "model " << options.model << " (" << attackpath::render(start) << " -> "
                  << attackpath::render(end) << ")\n";
        std::printf("%-5s %-13s %s\n", "cap", "final paths", "elapsed");
        for (const auto& row : report) {
            if (row.final_paths) {
                std::printf("%-5d %-13llu %s\n", row.cap,
                            static_cast<unsigned long long>(*row.final_paths),
                            format_seconds(row.elapsed).c_str());
            } else {
                std::printf("%-5d did not complete  > %s\n", row.cap,
                            format_seconds(row.elapsed).c_str());
            }
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attack-path enumeration over container/link/rule network models"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Parse and validate a model file");
    validate->add_option("model", validate_path, "model file")->required();

    RunOptions run_options;
    auto* run = app.add_subcommand("run", "Enumerate all start-to-end paths");
    run->add_option("model", run_options.model_path, "model file")->required();
    run->add_option("--start", run_options.start, "start container id")->required();
    run->add_option("--end", run_options.end, "end container id")->required();
    run->add_option("--link-cap", run_options.link_cap, "max traversals per link")
        ->check(CLI::PositiveNumber);
    run->add_option("--trace", run_options.trace_path, "write the trace to this file");
    run->add_option("--filters", run_options.filters_path, "apply a filter file to final paths");
    run->add_flag("--count-only", run_options.count_only, "keep counters only");
    run->add_option("--timeout", run_options.timeout_seconds, "wall-clock budget in seconds");

    BenchOptions bench_options;
    auto* bench = app.add_subcommand("bench", "Sweep link caps on a built-in model");
    bench->add_option("--model", bench_options.model, "built-in model number")
        ->check(CLI::Range(1, 3))
        ->required();
    bench->add_option("--caps", bench_options.caps, "cap range A..B")->required();
    bench->add_option("--timeout", bench_options.timeout_seconds, "per-run budget in seconds");
    bench->add_option("--format", bench_options.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed() && run_options.count_only &&
        (!run_options.trace_path.empty() || !run_options.filters_path.empty())) {
        std::cerr << "error: --count-only keeps no paths; drop --trace/--filters\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(validate_path);
        if (run->parsed()) return cmd_run(run_options);
        return cmd_bench(bench_options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

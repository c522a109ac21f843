#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leapsim/experiment.hpp"
#include "leapsim/report.hpp"

namespace leapsim {
namespace {

struct CliOptions {
    std::string trace_path;
    std::string gen_spec;
    std::vector<std::string> prefetchers;
    std::uint64_t resident_cap = 4096;
    std::uint64_t prefetch_cap = 0;  // 0 = unbounded
    std::uint64_t hsize = 32;
    unsigned nsplit = 2;
    unsigned pwmax = 8;
    unsigned nextn = 8;
    std::string eviction = "eager";
    std::string medium = "rdma";
    std::string datapath = "default";
    std::uint64_t arrival_delay = 0;
    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 0;
    std::vector<unsigned> windows;
};

void add_trace_options(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--trace", o.trace_path, "Trace file to replay");
    cmd->add_option("--gen", o.gen_spec,
                    "Generator spec (seq:/stride:/random:/interleave:/mixed:)");
}

void add_sim_options(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--prefetcher", o.prefetchers,
                    "Prefetcher to run: leap|readahead|nextn|stride|none (repeatable)");
    cmd->add_option("--resident-cap", o.resident_cap, "Resident set capacity in pages");
    cmd->add_option("--prefetch-cap", o.prefetch_cap,
                    "Prefetch cache capacity in pages (omit or 0 for unbounded)");
    cmd->add_option("--hsize", o.hsize, "Access-history capacity");
    cmd->add_option("--nsplit", o.nsplit, "Initial trend window divisor");
    cmd->add_option("--pwmax", o.pwmax, "Maximum prefetch window");
    cmd->add_option("--nextn", o.nextn, "Depth for the next-N-line baseline");
    cmd->add_option("--eviction", o.eviction, "Prefetch cache eviction: eager|lazy")
        ->check(CLI::IsMember({"eager", "lazy"}));
    cmd->add_option("--medium", o.medium, "Slow tier: rdma|disk")
        ->check(CLI::IsMember({"rdma", "disk"}));
    cmd->add_option("--datapath", o.datapath, "Miss path cost: default|lean")
        ->check(CLI::IsMember({"default", "lean"}));
    cmd->add_option("--arrival-delay", o.arrival_delay,
                    "Ticks before an inserted prefetch becomes hittable");
}

void add_output_options(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--format", o.format, "Output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out_path, "Write output to this file instead of stdout");
    cmd->add_option("--seed", o.seed, "Default seed for random generator segments");
}

ExperimentConfig build_config(const CliOptions& o) {
    ExperimentConfig config;
    config.trace_path = o.trace_path;
    config.gen_spec = o.gen_spec;
    const std::vector<std::string> names =
        o.prefetchers.empty() ? std::vector<std::string>{"leap"} : o.prefetchers;
    for (const auto& name : names) {
        auto kind = prefetcher_from_string(name);
        if (!kind) {
            throw std::invalid_argument("unknown prefetcher: " + name);
        }
        PrefetcherConfig pf;
        pf.kind = *kind;
        pf.h_size = o.hsize;
        pf.n_split = o.nsplit;
        pf.pw_max = o.pwmax;
        pf.next_n = o.nextn;
        config.prefetchers.push_back(pf);
    }
    config.memory.capacity_resident = o.resident_cap;
    if (o.prefetch_cap > 0) {
        config.memory.capacity_prefetch = o.prefetch_cap;
    }
    config.memory.eviction = o.eviction == "lazy" ? EvictionMode::lazy : EvictionMode::eager;
    config.memory.prefetch_arrival_delay = o.arrival_delay;
    config.latency.medium = o.medium == "disk" ? Medium::disk : Medium::rdma;
    config.latency.datapath =
        o.datapath == "lean" ? DatapathKind::lean : DatapathKind::default_path;
    config.format = o.format == "csv" ? OutputFormat::csv : OutputFormat::json;
    config.out_path = o.out_path;
    config.seed = o.seed;
    return config;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw std::invalid_argument("cannot open output file: " + out_path);
    }
    file << text;
}

int do_run(const CliOptions& o, std::ostream& out) {
    const ExperimentConfig config = build_config(o);
    const auto reports = run_experiment(config);
    const std::string text = config.format == OutputFormat::csv
                                 ? experiment_csv(config, reports)
                                 : experiment_json(config, reports);
    emit(text, config.out_path, out);
    return 0;
}

int do_compare(const CliOptions& o, std::ostream& out) {
    const ExperimentConfig config = build_config(o);
    const auto reports = run_experiment(config);
    emit(render_comparison(reports), config.out_path, out);
    return 0;
}

int do_gen(const CliOptions& o, std::ostream& out) {
    if (o.gen_spec.empty()) {
        throw std::invalid_argument("gen requires --gen <spec>");
    }
    ExperimentConfig config = build_config(o);
    config.prefetchers.clear();  // unused; avoid validation noise
    config.prefetchers.push_back({});
    const Trace trace = load_trace(config);
    if (o.out_path.empty()) {
        std::ostringstream os;
        write_trace(trace, os);
        out << os.str();
    } else {
        write_trace_file(trace, o.out_path);
    }
    return 0;
}

int do_classify(const CliOptions& o, std::ostream& out) {
    ExperimentConfig config = build_config(o);
    const Trace trace = load_trace(config);
    const std::vector<unsigned> windows =
        o.windows.empty() ? std::vector<unsigned>{2, 4, 8} : o.windows;
    std::vector<PatternBreakdown> rows;
    for (unsigned x : windows) {
        rows.push_back(classify_patterns(trace, x));
    }
    std::string text;
    if (o.format == "csv") {
        text = classification_csv(rows);
    } else if (o.format == "json") {
        text = classification_json(rows) + "\n";
    } else {
        text = render_classification(rows);
    }
    emit(text, o.out_path, out);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace-driven simulator for remote-memory prefetching"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file (CLI flags override it)");

    CliOptions run_opts, gen_opts, classify_opts, compare_opts;

    auto* run = app.add_subcommand("run", "Replay a trace under one or more prefetchers");
    add_trace_options(run, run_opts);
    add_sim_options(run, run_opts);
    add_output_options(run, run_opts);

    auto* gen = app.add_subcommand("gen", "Emit a synthetic trace file");
    add_trace_options(gen, gen_opts);
    add_output_options(gen, gen_opts);

    auto* classify = app.add_subcommand("classify", "Window-pattern breakdown of a trace");
    add_trace_options(classify, classify_opts);
    classify->add_option("--window", classify_opts.windows,
                         "Window length X (repeatable; default 2 4 8)");
    add_output_options(classify, classify_opts);

    auto* compare = app.add_subcommand("compare", "Run prefetchers and print a comparison table");
    add_trace_options(compare, compare_opts);
    add_sim_options(compare, compare_opts);
    add_output_options(compare, compare_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (run->parsed()) {
            return do_run(run_opts, out);
        }
        if (gen->parsed()) {
            return do_gen(gen_opts, out);
        }
        if (classify->parsed()) {
            return do_classify(classify_opts, out);
        }
        if (compare->parsed()) {
            return do_compare(compare_opts, out);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const TraceParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "simulation error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace leapsim

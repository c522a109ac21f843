#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leapsim/memsim.hpp"
#include "leapsim/prefetcher.hpp"
#include "leapsim/trace.hpp"

namespace leapsim {

enum class OutputFormat { json, csv };

/// One comparative run: every listed prefetcher replays the identical
/// trace under the same memory and latency model.
struct ExperimentConfig {
    std::string trace_path;  // exactly one of trace_path / gen_spec
    std::string gen_spec;

    std::vector<PrefetcherConfig> prefetchers;

    MemoryConfig memory;
    LatencyModel latency;

    OutputFormat format = OutputFormat::json;
    std::string out_path;   // empty = stdout
    std::uint64_t seed = 0; // default seed for generator specs without one

    bool operator==(const ExperimentConfig&) const = default;
};

/// Loads or generates the trace once and runs each prefetcher over it.
/// Reports come back in config order. Throws std::invalid_argument for bad
/// configs and std::runtime_error for execution failures.
std::vector<SimReport> run_experiment(const ExperimentConfig& config);

Trace load_trace(const ExperimentConfig& config);

/// Full resolved config as an ordered JSON object; embedded as the header
/// block of every report document so results are self-describing.
std::string config_to_json(const ExperimentConfig& config, int indent = 2);

/// Complete output document: resolved config header plus all reports.
std::string experiment_json(const ExperimentConfig& config,
                            const std::vector<SimReport>& reports);
/// CSV document: '#'-prefixed config header lines, the frozen column
/// header, then one row per report.
std::string experiment_csv(const ExperimentConfig& config,
                           const std::vector<SimReport>& reports);

}  // namespace leapsim

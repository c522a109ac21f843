#include "leapsim/experiment.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "leapsim/report.hpp"
#include "report_internal.hpp"

namespace leapsim {
namespace {

void validate(const ExperimentConfig& config) {
    const bool has_file = !config.trace_path.empty();
    const bool has_spec = !config.gen_spec.empty();
    if (has_file == has_spec) {
        throw std::invalid_argument("config needs exactly one of trace path / generator spec");
    }
    if (config.prefetchers.empty()) {
        throw std::invalid_argument("config needs at least one prefetcher");
    }
    if (config.memory.capacity_resident == 0) {
        throw std::invalid_argument("resident capacity must be at least 1");
    }
    if (config.memory.capacity_prefetch && *config.memory.capacity_prefetch == 0) {
        throw std::invalid_argument("prefetch capacity must be at least 1 or unbounded");
    }
}

// The --seed flag supplies a default for random segments that don't name one.
std::string apply_default_seed(const std::string& spec, std::uint64_t seed) {
    if (seed == 0 || spec.find("random") == std::string::npos) {
        return spec;
    }
    std::string out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        const std::size_t hit = spec.find("random:", pos);
        if (hit == std::string::npos) {
            out += spec.substr(pos);
            break;
        }
        std::size_t end = spec.find('+', hit);
        if (end == std::string::npos) {
            end = spec.size();
        }
        std::string segment = spec.substr(hit, end - hit);
        if (segment.find("seed=") == std::string::npos) {
            segment += ",seed=" + std::to_string(seed);
        }
        out += spec.substr(pos, hit - pos) + segment;
        pos = end;
    }
    return out;
}

}  // namespace

Trace load_trace(const ExperimentConfig& config) {
    if (!config.trace_path.empty()) {
        return parse_trace_file(config.trace_path);
    }
    return generate_from_spec(apply_default_seed(config.gen_spec, config.seed));
}

std::vector<SimReport> run_experiment(const ExperimentConfig& config) {
    validate(config);
    const Trace trace = load_trace(config);
    std::vector<SimReport> reports;
    reports.reserve(config.prefetchers.size());
    for (const auto& pf : config.prefetchers) {
        if (config.memory.prefetch_arrival_delay > 0) {
            reports.push_back(simulate_latency_aware(trace, pf, config.memory, config.latency,
                                                     config.memory.prefetch_arrival_delay));
        } else {
            reports.push_back(simulate(trace, pf, config.memory, config.latency));
        }
    }
    return reports;
}

namespace {

nlohmann::ordered_json config_json_object(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["trace"] = c.trace_path.empty() ? c.gen_spec : c.trace_path;
    j["trace_source"] = c.trace_path.empty() ? "generator" : "file";
    nlohmann::ordered_json pfs = nlohmann::ordered_json::array();
    for (const auto& pf : c.prefetchers) {
        pfs.push_back(nlohmann::ordered_json{
            {"kind", std::string(to_string(pf.kind))},
            {"hsize", pf.h_size},
            {"nsplit", pf.n_split},
            {"pwmax", pf.pw_max},
            {"nextn", pf.next_n},
        });
    }
    j["prefetchers"] = std::move(pfs);
    j["resident_cap"] = c.memory.capacity_resident;
    if (c.memory.capacity_prefetch) {
        j["prefetch_cap"] = *c.memory.capacity_prefetch;
    } else {
        j["prefetch_cap"] = "unbounded";
    }
    j["eviction"] = std::string(to_string(c.memory.eviction));
    j["medium"] = std::string(to_string(c.latency.medium));
    j["datapath"] = std::string(to_string(c.latency.datapath));
    j["arrival_delay"] = c.memory.prefetch_arrival_delay;
    j["latency_ns"] = nlohmann::ordered_json{
        {"resident_hit", c.latency.t_resident_hit},
        {"prefetch_hit", c.latency.t_prefetch_hit},
        {"fetch_rdma", c.latency.t_fetch_rdma},
        {"fetch_disk", c.latency.t_fetch_disk},
        {"datapath_default", c.latency.t_datapath_default},
        {"datapath_lean", c.latency.t_datapath_lean},
    };
    j["seed"] = c.seed;
    return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config, int indent) {
    return config_json_object(config).dump(indent);
}

std::string experiment_json(const ExperimentConfig& config,
                            const std::vector<SimReport>& reports) {
    nlohmann::ordered_json doc;
    doc["config"] = config_json_object(config);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        arr.push_back(report_json_object(r));
    }
    doc["reports"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::string experiment_csv(const ExperimentConfig& config,
                           const std::vector<SimReport>& reports) {
    std::ostringstream os;
    os << "# config " << config_json_object(config).dump() << '\n';
    os << report_csv_header() << '\n';
    for (const auto& r : reports) {
        os << report_csv_row(r) << '\n';
    }
    return os.str();
}

}  // namespace leapsim

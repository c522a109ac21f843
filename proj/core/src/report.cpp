#include "leapsim/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace leapsim {
namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

nlohmann::ordered_json dist_json(const DistSummary& d) {
    return nlohmann::ordered_json{
        {"p50", d.p50},   {"p90", d.p90}, {"p99", d.p99},     {"p999", d.p999},
        {"min", d.min},   {"max", d.max}, {"total", d.total}, {"count", d.count},
        {"mean", d.mean},
    };
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        widths[c] = header[c].size();
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << row[c];
            if (c + 1 < row.size()) {
                os << std::string(widths[c] - row[c].size() + 2, ' ');
            }
        }
        os << '\n';
    };
    emit(header);
    for (const auto& row : rows) {
        emit(row);
    }
    return os.str();
}

}  // namespace

nlohmann::ordered_json report_json_object(const SimReport& r) {
    nlohmann::ordered_json j;
    j["prefetcher"] = r.prefetcher;
    j["total_requests"] = r.total_requests;
    j["resident_hits"] = r.resident_hits;
    j["prefetch_hits"] = r.prefetch_hits;
    j["late_prefetch_hits"] = r.late_prefetch_hits;
    j["misses"] = r.misses;
    j["pages_prefetched"] = r.pages_prefetched;
    j["pollution"] = r.pollution;
    j["accuracy"] = r.accuracy;
    j["coverage"] = r.coverage;
    j["latency_ns"] = dist_json(r.latency_ns);
    j["timeliness"] = dist_json(r.timeliness);
    nlohmann::ordered_json per;
    for (const auto& [pid, counts] : r.per_process) {
        per[std::to_string(pid)] = nlohmann::ordered_json{
            {"requests", counts.requests},
            {"resident_hits", counts.resident_hits},
            {"prefetch_hits", counts.prefetch_hits},
            {"misses", counts.misses},
        };
    }
    j["per_process"] = std::move(per);
    return j;
}

std::string report_to_json(const SimReport& report, int indent) {
    return report_json_object(report).dump(indent);
}

std::string report_csv_header() {
    return "prefetcher,total_requests,resident_hits,prefetch_hits,late_prefetch_hits,"
           "misses,pages_prefetched,pollution,accuracy,coverage,"
           "latency_p50_ns,latency_p90_ns,latency_p99_ns,latency_p999_ns,latency_mean_ns,"
           "timeliness_p50,timeliness_p90,timeliness_p99,timeliness_mean,timeliness_count";
}

std::string report_csv_row(const SimReport& r) {
    std::ostringstream os;
    os << r.prefetcher << ',' << r.total_requests << ',' << r.resident_hits << ','
       << r.prefetch_hits << ',' << r.late_prefetch_hits << ',' << r.misses << ','
       << r.pages_prefetched << ',' << r.pollution << ',' << fixed6(r.accuracy) << ','
       << fixed6(r.coverage) << ',' << r.latency_ns.p50 << ',' << r.latency_ns.p90 << ','
       << r.latency_ns.p99 << ',' << r.latency_ns.p999 << ',' << fixed6(r.latency_ns.mean)
       << ',' << r.timeliness.p50 << ',' << r.timeliness.p90 << ',' << r.timeliness.p99
       << ',' << fixed6(r.timeliness.mean) << ',' << r.timeliness.count;
    return os.str();
}

std::string render_comparison(const std::vector<SimReport>& reports) {
    const std::vector<std::string> header = {
        "prefetcher", "accuracy",  "coverage", "pollution",       "cache_adds",
        "misses",     "p50_ns",    "p99_ns",   "timeliness_p50",  "timeliness_p99",
    };
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        rows.push_back({
            r.prefetcher,
            fixed4(r.accuracy),
            fixed4(r.coverage),
            std::to_string(r.pollution),
            std::to_string(r.pages_prefetched),
            std::to_string(r.misses),
            std::to_string(r.latency_ns.p50),
            std::to_string(r.latency_ns.p99),
            std::to_string(r.timeliness.p50),
            std::to_string(r.timeliness.p99),
        });
    }
    return render_table(header, rows);
}

std::string render_classification(const std::vector<PatternBreakdown>& rows) {
    const std::vector<std::string> header = {"window", "sequential", "stride", "other",
                                             "windows"};
    std::vector<std::vector<std::string>> body;
    for (const auto& b : rows) {
        body.push_back({std::to_string(b.window_length), fixed4(b.sequential_frac),
                        fixed4(b.stride_frac), fixed4(b.other_frac),
                        std::to_string(b.windows)});
    }
    return render_table(header, body);
}

std::string classification_csv(const std::vector<PatternBreakdown>& rows) {
    std::ostringstream os;
    os << "window,sequential_frac,stride_frac,other_frac,windows\n";
    for (const auto& b : rows) {
        os << b.window_length << ',' << fixed6(b.sequential_frac) << ','
           << fixed6(b.stride_frac) << ',' << fixed6(b.other_frac) << ',' << b.windows
           << '\n';
    }
    return os.str();
}

std::string classification_json(const std::vector<PatternBreakdown>& rows, int indent) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& b : rows) {
        arr.push_back(nlohmann::ordered_json{
            {"window", b.window_length},
            {"sequential_frac", b.sequential_frac},
            {"stride_frac", b.stride_frac},
            {"other_frac", b.other_frac},
            {"windows", b.windows},
        });
    }
    return arr.dump(indent);
}

}  // namespace leapsim

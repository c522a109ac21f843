#pragma once

#include <string>
#include <vector>

#include "leapsim/memsim.hpp"

namespace leapsim {

/// Frozen CSV column order; documented in the README and pinned by tests.
/// Changing it breaks downstream plotting, so don't.
std::string report_csv_header();
std::string report_csv_row(const SimReport& report);

/// Flat JSON object for one report (per-process breakdown nested under
/// "per_process", ordered by pid). Stable key order, no timestamps.
std::string report_to_json(const SimReport& report, int indent = 2);

/// Aligned text table: prefetcher, accuracy, coverage, pollution, cache
/// adds, misses, p50/p99 latency, timeliness p50/p99. One row per report.
std::string render_comparison(const std::vector<SimReport>& reports);

/// Aligned text table for pattern breakdowns.
std::string render_classification(const std::vector<PatternBreakdown>& rows);
std::string classification_csv(const std::vector<PatternBreakdown>& rows);
std::string classification_json(const std::vector<PatternBreakdown>& rows, int indent = 2);

}  // namespace leapsim

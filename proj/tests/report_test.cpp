#include <doctest.h>

#include <sstream>

#include "leapsim/experiment.hpp"
#include "leapsim/report.hpp"

using namespace leapsim;

namespace {

ExperimentConfig stride_config() {
    ExperimentConfig config;
    config.gen_spec = "stride:n=4096,k=10";
    config.prefetchers = {{.kind = PrefetcherKind::leap},
                          {.kind = PrefetcherKind::readahead}};
    config.memory.capacity_resident = 1024;
    return config;
}

}  // namespace

TEST_CASE("csv column order is frozen") {
    CHECK(report_csv_header() ==
          "prefetcher,total_requests,resident_hits,prefetch_hits,late_prefetch_hits,"
          "misses,pages_prefetched,pollution,accuracy,coverage,"
          "latency_p50_ns,latency_p90_ns,latency_p99_ns,latency_p999_ns,latency_mean_ns,"
          "timeliness_p50,timeliness_p90,timeliness_p99,timeliness_mean,timeliness_count");
    SimReport r;
    r.prefetcher = "leap";
    const std::string row = report_csv_row(r);
    // Same number of fields as the header.
    const auto count_commas = [](const std::string& s) {
        return std::count(s.begin(), s.end(), ',');
    };
    CHECK(count_commas(row) == count_commas(report_csv_header()));
}

TEST_CASE("run_experiment replays the identical trace per prefetcher, in order") {
    const auto reports = run_experiment(stride_config());
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].prefetcher == "leap");
    CHECK(reports[1].prefetcher == "readahead");
    CHECK(reports[0].total_requests == reports[1].total_requests);
    CHECK(reports[0].coverage > reports[1].coverage);
}

TEST_CASE("experiment output is byte-identical across runs") {
    const auto config = stride_config();
    const auto a = run_experiment(config);
    const auto b = run_experiment(config);
    CHECK(experiment_json(config, a) == experiment_json(config, b));
    CHECK(experiment_csv(config, a) == experiment_csv(config, b));
}

TEST_CASE("json document carries the resolved config header") {
    const auto config = stride_config();
    const auto reports = run_experiment(config);
    const std::string doc = experiment_json(config, reports);
    CHECK(doc.find("\"config\"") != std::string::npos);
    CHECK(doc.find("stride:n=4096,k=10") != std::string::npos);
    CHECK(doc.find("\"resident_cap\": 1024") != std::string::npos);
    CHECK(doc.find("\"reports\"") != std::string::npos);
}

TEST_CASE("comparison table: one aligned row per report, identical rows for identical reports") {
    const auto reports = run_experiment(stride_config());
    const std::string table = render_comparison(reports);
    std::istringstream lines(table);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) {
        rows.push_back(line);
    }
    REQUIRE(rows.size() == 3);  // header + 2 rows
    CHECK(rows[0].find("prefetcher") == 0);
    CHECK(rows[1].find("leap") == 0);
    CHECK(rows[2].find("readahead") == 0);

    const std::vector<SimReport> twice = {reports[0], reports[0]};
    const std::string same = render_comparison(twice);
    std::istringstream same_lines(same);
    std::vector<std::string> same_rows;
    while (std::getline(same_lines, line)) {
        same_rows.push_back(line);
    }
    REQUIRE(same_rows.size() == 3);
    CHECK(same_rows[1] == same_rows[2]);
}

TEST_CASE("single-report table renders one row") {
    ExperimentConfig config = stride_config();
    config.prefetchers = {{.kind = PrefetcherKind::none}};
    const auto reports = run_experiment(config);
    const std::string table = render_comparison(reports);
    CHECK(std::count(table.begin(), table.end(), '\n') == 2);
}

TEST_CASE("run_experiment validates its inputs") {
    ExperimentConfig config;
    config.prefetchers = {{.kind = PrefetcherKind::leap}};
    CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);  // no trace source

    config.gen_spec = "seq:n=16";
    config.trace_path = "also_set.csv";
    CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);  // both sources

    config.trace_path.clear();
    config.prefetchers.clear();
    CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);  // no prefetchers

    config.prefetchers = {{.kind = PrefetcherKind::leap}};
    config.memory.capacity_resident = 0;
    CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);

    ExperimentConfig missing;
    missing.trace_path = "/definitely/not/here.csv";
    missing.prefetchers = {{.kind = PrefetcherKind::leap}};
    CHECK_THROWS_AS(run_experiment(missing), std::invalid_argument);
}

TEST_CASE("seed flag fills in unseeded random segments") {
    ExperimentConfig config;
    config.gen_spec = "random:n=64,range=4096";
    config.prefetchers = {{.kind = PrefetcherKind::none}};
    config.seed = 9;
    const Trace with_seed = load_trace(config);
    CHECK(with_seed.events == gen_random(64, 4096, 9).events);

    // An explicit seed in the spec wins.
    config.gen_spec = "random:n=64,range=4096,seed=2";
    CHECK(load_trace(config).events == gen_random(64, 4096, 2).events);
}

TEST_CASE("classification renderers agree on the numbers") {
    const Trace t = gen_sequential(64, 0, 1);
    std::vector<PatternBreakdown> rows = {classify_patterns(t, 2), classify_patterns(t, 4)};
    const std::string csv = classification_csv(rows);
    CHECK(csv.find("2,1.000000,0.000000,0.000000") != std::string::npos);
    const std::string json = classification_json(rows);
    CHECK(json.find("\"sequential_frac\": 1.0") != std::string::npos);
    const std::string table = render_classification(rows);
    CHECK(table.find("1.0000") != std::string::npos);
}

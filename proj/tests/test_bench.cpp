#include <doctest.h>

#include <sstream>

#include "qtwtl/bench.hpp"

using namespace qtwtl;

TEST_SUITE("bench") {

TEST_CASE("a perfect line earns an R-squared of one") {
    CHECK(least_squares_r2({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
    CHECK(least_squares_r2({1, 2, 3, 4}, {7, 5, 3, 1}) == doctest::Approx(1.0));
    // Constant data carries no variance to explain.
    CHECK(least_squares_r2({1, 2, 3}, {5, 5, 5}) == doctest::Approx(1.0));
}

TEST_CASE("scatter is penalised") {
    const double r2 = least_squares_r2({1, 2, 3, 4, 5}, {1, 9, 2, 8, 3});
    CHECK(r2 < 0.5);
    CHECK(r2 >= 0.0);
}

TEST_CASE("a small sweep produces one row per point and a well-formed CSV") {
    BenchConfig cfg;
    cfg.trace_counts = {50, 100};
    cfg.events_per_trace = 20; // generator needs room for a full on-time trip
    cfg.event_counts = {20, 40};
    cfg.traces_for_events = 5;
    cfg.repeat = 1;
    cfg.seed = 3;

    std::ostringstream progress;
    BenchReport rep = run_bench(cfg, &progress);
    REQUIRE(rep.rows.size() == 4);

    CHECK(rep.rows[0].sweep == "traces");
    CHECK(rep.rows[0].value == 50);
    CHECK(rep.rows[1].value == 100);
    CHECK(rep.rows[2].sweep == "events");
    CHECK(rep.rows[2].value == 20);
    CHECK(rep.rows[3].value == 40);
    for (const BenchRow& row : rep.rows) {
        CHECK(row.formula == cfg.formula);
        CHECK(row.wall_ms >= 0.0);
        CHECK(row.peak_mem_bytes >= 0);
    }
    CHECK(rep.ratio_traces > 0.0);
    CHECK(rep.ratio_events > 0.0);
    CHECK(!progress.str().empty());

    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("sweep,value,formula,wall_ms,peak_mem_bytes,r2\n", 0) == 0);
    CHECK(csv.find("\ntraces,50,") != std::string::npos);
    CHECK(csv.find("\nevents,40,") != std::string::npos);
    // Header plus one line per row.
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 5);
}

} // TEST_SUITE

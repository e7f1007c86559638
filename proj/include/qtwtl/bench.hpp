// Scaling benchmarks: evaluation wall time as the trace count grows (fixed
// trace length) and as the trace length grows (fixed trace count). Each
// point is the best of `repeat` runs; a least-squares line through each
// sweep yields R² as a linearity measure.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qtwtl {

struct BenchConfig {
    std::vector<std::size_t> trace_counts{10000, 20000, 40000};
    std::size_t events_per_trace = 50;
    std::vector<std::size_t> event_counts{10000, 20000, 40000};
    std::size_t traces_for_events = 200;
    std::string formula = "A_max(trip_distance) < 100";
    int repeat = 3;
    std::uint64_t seed = 7;
};

struct BenchRow {
    std::string sweep; // "traces" | "events"
    std::size_t value = 0;
    std::string formula;
    double wall_ms = 0.0;
    std::int64_t peak_mem_bytes = 0;
    double r2 = 0.0; // of the sweep this row belongs to
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double r2_traces = 0.0;
    double r2_events = 0.0;
    double ratio_traces = 0.0; // time at largest / time at smallest point
    double ratio_events = 0.0;

    std::string to_csv() const;
};

// R² of the least-squares line through (xs, ys).
double least_squares_r2(const std::vector<double>& xs, const std::vector<double>& ys);

BenchReport run_bench(const BenchConfig& cfg, std::ostream* progress = nullptr);

} // namespace qtwtl

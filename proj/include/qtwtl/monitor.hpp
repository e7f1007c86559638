// Top-level monitoring: dispatches a quality formula over a trace set and
// produces a verdict plus a machine-readable report. An empty trace set is
// rejected outright (verdict false) regardless of the formula.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtwtl/ast.hpp"
#include "qtwtl/rewrite.hpp"
#include "qtwtl/trace.hpp"

namespace qtwtl {

// How unresolved per-trace verdicts fold into two-valued results.
enum class OnInconclusive { TreatFalse, TreatTrue, Report };

OnInconclusive parse_on_inconclusive(const std::string& name); // false|true|report

struct MonitorConfig {
    bool strict_within = false;
    OnInconclusive inconclusive = OnInconclusive::TreatFalse;
    bool include_silent_zeros = false;
    int jobs = 1;

    RewriteConfig rewrite() const { return {strict_within}; }
};

struct OperatorReport {
    std::string op;   // "temporal" | "count" | "aggregate"
    std::string text; // the subformula as printed
    bool verdict = false;
    std::optional<double> value;                // fraction / failing aggregate
    std::optional<std::int64_t> failing_column; // aggregation only
    std::optional<std::string> failing_trace;   // temporal only
    std::size_t inconclusive = 0;               // unresolved traces seen
};

struct MonitorReport {
    bool verdict = false;
    std::optional<std::string> cause; // set when the verdict is negative
    std::vector<OperatorReport> operators;
    double wall_ms = 0.0;
    std::optional<std::int64_t> peak_mem_bytes;

    std::string to_json() const;
};

MonitorReport monitor(const QualityPtr& formula, const TraceSet& ts,
                      const MonitorConfig& cfg = {});

// Resident-set high-water mark of this process, if the platform reports one.
std::optional<std::int64_t> peak_memory_bytes();

} // namespace qtwtl

// Quality operators over trace sets.
//
// Counting evaluates a temporal formula on every trace and compares the
// fraction of satisfying traces against a bound. Aggregation projects a
// parameter into per-time-index columns, applies min/max/avg to each
// column, and requires every non-empty column to satisfy the comparison;
// empty columns are skipped. Averages of large columns are summed pairwise
// to keep rounding error independent of column length.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtwtl/ast.hpp"
#include "qtwtl/rewrite.hpp"
#include "qtwtl/trace.hpp"

namespace qtwtl {

// min/max/avg of a column; empty columns have no value.
std::optional<double> aggregate_op(Agg sigma, const std::vector<double>& xs);

struct CountEvaluation {
    std::size_t satisfied = 0;
    std::size_t inconclusive = 0;
    std::size_t total = 0;
    double fraction = 0.0;
    bool verdict = false;
};

// inconclusive_as_satisfied controls how unresolved traces are counted.
CountEvaluation evaluate_count(const TemporalPtr& phi, const TraceSet& ts, Cmp cmp, double bound,
                               const RewriteConfig& cfg = {},
                               bool inconclusive_as_satisfied = false, int jobs = 1);

struct AggregateEvaluation {
    bool verdict = true;
    std::size_t columns = 0; // columns inspected (projection width)
    std::size_t skipped = 0; // empty columns passed over
    std::optional<std::int64_t> failing_column;
    std::optional<double> failing_value;
};

AggregateEvaluation evaluate_aggregate(const TraceSet& ts, Agg sigma, const std::string& param,
                                       Cmp cmp, double bound, bool include_silent_zeros = false);

// Per-trace verdicts, in trace order; parallelised over jobs when > 1 with
// results independent of the job count.
std::vector<VerdictKind> evaluate_traces(const TemporalPtr& phi, const TraceSet& ts,
                                         const RewriteConfig& cfg = {}, int jobs = 1);

} // namespace qtwtl

#include "qtwtl/quality.hpp"

#include <algorithm>
#include <thread>

namespace qtwtl {
namespace {

// Pairwise threshold: below this a plain left fold is used, and reference
// implementations summing small columns the naive way agree bit for bit.
constexpr std::size_t kPairwiseCutoff = 1024;

double pairwise_sum(const double* xs, std::size_t n) {
    if (n <= kPairwiseCutoff) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xs[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs, half) + pairwise_sum(xs + half, n - half);
}

} // namespace

std::optional<double> aggregate_op(Agg sigma, const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    switch (sigma) {
    case Agg::Min:
        return *std::min_element(xs.begin(), xs.end());
    case Agg::Max:
        return *std::max_element(xs.begin(), xs.end());
    case Agg::Avg:
        return pairwise_sum(xs.data(), xs.size()) / static_cast<double>(xs.size());
    }
    return std::nullopt; // unreachable
}

std::vector<VerdictKind> evaluate_traces(const TemporalPtr& phi, const TraceSet& ts,
                                         const RewriteConfig& cfg, int jobs) {
    std::vector<VerdictKind> out(ts.size());
    const std::size_t n = ts.size();
    const std::size_t workers =
        std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = trace_handler(phi, ts[i], cfg).kind;
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers)
                out[i] = trace_handler(phi, ts[i], cfg).kind;
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

CountEvaluation evaluate_count(const TemporalPtr& phi, const TraceSet& ts, Cmp cmp, double bound,
                               const RewriteConfig& cfg, bool inconclusive_as_satisfied,
                               int jobs) {
    CountEvaluation r;
    r.total = ts.size();
    for (VerdictKind k : evaluate_traces(phi, ts, cfg, jobs)) {
        if (k == VerdictKind::True)
            ++r.satisfied;
        else if (k == VerdictKind::Inconclusive) {
            ++r.inconclusive;
            if (inconclusive_as_satisfied) ++r.satisfied;
        }
    }
    r.fraction = r.total == 0
                     ? 0.0
                     : static_cast<double>(r.satisfied) / static_cast<double>(r.total);
    r.verdict = compare(cmp, r.fraction, bound);
    return r;
}

AggregateEvaluation evaluate_aggregate(const TraceSet& ts, Agg sigma, const std::string& param,
                                       Cmp cmp, double bound, bool include_silent_zeros) {
    const ProjectionTable table = project(ts, param, include_silent_zeros);
    AggregateEvaluation r;
    r.columns = table.columns.size();
    for (std::size_t z = 0; z < table.columns.size(); ++z) {
        const std::optional<double> v = aggregate_op(sigma, table.columns[z]);
        if (!v) {
            ++r.skipped;
            continue;
        }
        if (!compare(cmp, *v, bound)) {
            r.verdict = false;
            r.failing_column = static_cast<std::int64_t>(z);
            r.failing_value = *v;
            break;
        }
    }
    return r;
}

} // namespace qtwtl

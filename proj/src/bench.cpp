#include "qtwtl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>

#if defined(__x86_64__) || defined(_M_X64)
#include <emmintrin.h>
#endif

#include "qtwtl/monitor.hpp"
#include "qtwtl/parser.hpp"
#include "qtwtl/tracegen.hpp"

namespace qtwtl {
namespace {

#if defined(__x86_64__) || defined(_M_X64)
void flush_range(const void* p, std::size_t bytes) {
    if (bytes == 0) return;
    const char* c = static_cast<const char*>(p);
    for (std::size_t off = 0; off < bytes; off += 64) _mm_clflush(c + off);
    _mm_clflush(c + bytes - 1);
}

// Evicts the trace set from the CPU caches so every timed run starts from
// the same cold state. Without this, a set small enough to stay resident in
// the last-level cache between repeats is timed warm while a large one is
// timed streaming from memory, and the scaling ratio measures cache capacity
// instead of the algorithm.
void evict_from_caches(const TraceSet& ts) {
    for (const Trace& t : ts) {
        flush_range(t.events.data(), t.events.size() * sizeof(TimedEvent));
        for (const TimedEvent& e : t.events) {
            for (const auto& kv : e.params) flush_range(&kv, sizeof(kv));
            for (const std::string& s : e.props) flush_range(s.data(), s.size());
        }
    }
    _mm_mfence();
}
#else
void evict_from_caches(const TraceSet&) {} // timings may run cache-warm
#endif

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double time_monitor_ms(const QualityPtr& q, const TraceSet& ts, int repeat) {
    double best = 0.0;
    for (int r = 0; r < std::max(repeat, 1); ++r) {
        evict_from_caches(ts);
        const auto t0 = std::chrono::steady_clock::now();
        (void)monitor(q, ts);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (r == 0 || ms < best) best = ms;
    }
    return best;
}

} // namespace

double least_squares_r2(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) return 0.0;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return syy == 0.0 ? 1.0 : 0.0;
    const double beta = sxy / sxx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = my + beta * (xs[i] - mx);
        ss_res += (ys[i] - fit) * (ys[i] - fit);
    }
    return 1.0 - ss_res / syy;
}

BenchReport run_bench(const BenchConfig& cfg, std::ostream* progress) {
    const QualityPtr q = parse(cfg.formula);
    BenchReport report;

    const auto sweep = [&](const std::string& name, const std::vector<std::size_t>& values,
                           auto make_set) -> std::pair<double, double> {
        std::vector<double> xs, ys;
        const std::size_t first_row = report.rows.size();
        for (std::size_t v : values) {
            const TraceSet ts = make_set(v);
            const double ms = time_monitor_ms(q, ts, cfg.repeat);
            if (progress)
                *progress << name << " " << v << ": " << ms << " ms\n";
            BenchRow row;
            row.sweep = name;
            row.value = v;
            row.formula = cfg.formula;
            row.wall_ms = ms;
            row.peak_mem_bytes = peak_memory_bytes().value_or(0);
            report.rows.push_back(std::move(row));
            xs.push_back(static_cast<double>(v));
            ys.push_back(ms);
        }
        const double r2 = least_squares_r2(xs, ys);
        for (std::size_t i = first_row; i < report.rows.size(); ++i) report.rows[i].r2 = r2;
        const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
        const double ratio = ys[static_cast<std::size_t>(lo - xs.begin())] > 0.0
                                 ? ys[static_cast<std::size_t>(hi - xs.begin())] /
                                       ys[static_cast<std::size_t>(lo - xs.begin())]
                                 : 0.0;
        return {r2, ratio};
    };

    GenProfile by_traces;
    by_traces.target_len = cfg.events_per_trace;
    std::tie(report.r2_traces, report.ratio_traces) =
        sweep("traces", cfg.trace_counts,
              [&](std::size_t n) { return generate(n, cfg.seed, by_traces); });

    std::tie(report.r2_events, report.ratio_events) =
        sweep("events", cfg.event_counts, [&](std::size_t len) {
            GenProfile p;
            p.target_len = len;
            return generate(cfg.traces_for_events, cfg.seed + 1, p);
        });

    return report;
}

std::string BenchReport::to_csv() const {
    std::ostringstream os;
    os << "sweep,value,formula,wall_ms,peak_mem_bytes,r2\n";
    for (const BenchRow& r : rows) {
        os << r.sweep << ',' << r.value << ',' << csv_quote(r.formula) << ',' << r.wall_ms
           << ',' << r.peak_mem_bytes << ',' << r.r2 << '\n';
    }
    return os.str();
}

} // namespace qtwtl

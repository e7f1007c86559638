#include "qtwtl/fuzz.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qtwtl/monitor.hpp"
#include "qtwtl/oracle.hpp"
#include "qtwtl/quality.hpp"
#include "qtwtl/rewrite.hpp"
#include "qtwtl/tracegen.hpp"
#include "qtwtl/trace_io.hpp"

namespace qtwtl {
namespace {

const char* kProps[] = {"p", "q", "r"};
const char* kParams[] = {"x", "y"};

int pick(std::mt19937_64& rng, int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Cmp fuzz_cmp(std::mt19937_64& rng) {
    static const Cmp all[] = {Cmp::Ne, Cmp::Lt, Cmp::Gt, Cmp::Le, Cmp::Ge};
    return all[pick(rng, 5)];
}

TemporalPtr fuzz_hold(std::mt19937_64& rng) {
    return hold(pick(rng, 4), kProps[pick(rng, 3)], chance(rng, 0.25));
}

// --- independent quality-level reference ---------------------------------

bool ref_aggregate(const TraceSet& ts, Agg sigma, const std::string& param, Cmp cmp,
                   double bound) {
    std::size_t width = 0;
    bool known = false;
    for (const Trace& tr : ts) {
        width = std::max(width, tr.events.size());
        for (const TimedEvent& e : tr.events)
            if (!e.silent && e.params.count(param)) known = true;
    }
    if (!known) return false; // unknown parameter: unsatisfied, not an error
    for (std::size_t z = 0; z < width; ++z) {
        std::vector<double> xs;
        for (const Trace& tr : ts) {
            if (z >= tr.events.size() || tr.events[z].silent) continue;
            auto it = tr.events[z].params.find(param);
            if (it != tr.events[z].params.end()) xs.push_back(it->second);
        }
        if (xs.empty()) continue;
        double v = 0.0;
        if (sigma == Agg::Min) v = *std::min_element(xs.begin(), xs.end());
        if (sigma == Agg::Max) v = *std::max_element(xs.begin(), xs.end());
        if (sigma == Agg::Avg) {
            double s = 0.0;
            for (double x : xs) s += x;
            v = s / static_cast<double>(xs.size());
        }
        if (!compare(cmp, v, bound)) return false;
    }
    return true;
}

bool ref_quality(const QualityPtr& q, const TraceSet& ts) {
    switch (q->kind) {
    case QKind::Temporal:
        for (const Trace& tr : ts)
            if (ref_verdict(q->phi, tr).kind != VerdictKind::True) return false;
        return true;
    case QKind::Count: {
        std::size_t sat = 0;
        for (const Trace& tr : ts)
            if (ref_verdict(q->phi, tr).kind == VerdictKind::True) ++sat;
        const double frac = ts.empty() ? 0.0
                                       : static_cast<double>(sat) /
                                             static_cast<double>(ts.size());
        return compare(q->cmp, frac, q->bound);
    }
    case QKind::Aggregate:
        return ref_aggregate(ts, q->sigma, q->param, q->cmp, q->bound);
    case QKind::Combo:
        break;
    }
    switch (q->op) {
    case BoolOp::Not:
        return !ref_quality(q->operands[0], ts);
    case BoolOp::And:
        for (const QualityPtr& c : q->operands)
            if (!ref_quality(c, ts)) return false;
        return true;
    case BoolOp::Or:
        for (const QualityPtr& c : q->operands)
            if (ref_quality(c, ts)) return true;
        return false;
    case BoolOp::Implies:
        return !ref_quality(q->operands[0], ts) || ref_quality(q->operands[1], ts);
    }
    return false; // unreachable
}

std::string dump_traces(const TraceSet& ts) {
    std::ostringstream os;
    write_jsonl(ts, os);
    return os.str();
}

const char* verdict_name(VerdictKind k) {
    switch (k) {
    case VerdictKind::True:
        return "true";
    case VerdictKind::False:
        return "false";
    default:
        return "inconclusive";
    }
}

} // namespace

TemporalPtr fuzz_temporal(std::mt19937_64& rng, int max_depth) {
    if (max_depth <= 0) {
        const int r = pick(rng, 10);
        if (r == 0) return t_true();
        if (r == 1) return t_false();
        return fuzz_hold(rng);
    }
    switch (pick(rng, 20)) {
    case 0:
        return t_true();
    case 1:
        return t_false();
    case 2:
    case 3:
        return t_not(fuzz_temporal(rng, max_depth - 1));
    case 4:
    case 5:
    case 6:
        return t_and(fuzz_temporal(rng, max_depth - 1), fuzz_temporal(rng, max_depth - 1));
    case 7:
    case 8:
    case 9:
        return t_or(fuzz_temporal(rng, max_depth - 1), fuzz_temporal(rng, max_depth - 1));
    case 10:
    case 11:
    case 12:
        return t_concat(fuzz_temporal(rng, max_depth - 1), fuzz_temporal(rng, max_depth - 1));
    case 13:
    case 14:
    case 15: {
        const int lo = pick(rng, 4);
        return within(fuzz_temporal(rng, max_depth - 1), lo, lo + pick(rng, 5));
    }
    default:
        return fuzz_hold(rng);
    }
}

TemporalPtr fuzz_closed_temporal(std::mt19937_64& rng, int max_depth) {
    if (max_depth <= 0) return chance(rng, 0.5) ? t_true() : t_false();
    switch (pick(rng, 12)) {
    case 0:
        return t_not(fuzz_closed_temporal(rng, max_depth - 1));
    case 1:
    case 2:
        return t_and(fuzz_closed_temporal(rng, max_depth - 1),
                     fuzz_closed_temporal(rng, max_depth - 1));
    case 3:
    case 4:
        return t_or(fuzz_closed_temporal(rng, max_depth - 1),
                    fuzz_closed_temporal(rng, max_depth - 1));
    case 5:
    case 6:
    case 7:
        return t_concat(fuzz_closed_temporal(rng, max_depth - 1),
                        fuzz_closed_temporal(rng, max_depth - 1));
    case 8:
    case 9: {
        const int lo = pick(rng, 4);
        return within(fuzz_closed_temporal(rng, max_depth - 1), lo, lo + pick(rng, 5));
    }
    default:
        return chance(rng, 0.5) ? t_true() : t_false();
    }
}

QualityPtr fuzz_quality(std::mt19937_64& rng, int max_depth) {
    const int r = max_depth <= 0 ? pick(rng, 7) : pick(rng, 10);
    switch (r) {
    case 0:
    case 1:
        return q_temporal(fuzz_temporal(rng, std::max(max_depth - 1, 0)));
    case 2:
    case 3:
        return q_count(fuzz_temporal(rng, std::max(max_depth - 1, 0)), fuzz_cmp(rng),
                       pick(rng, 21) * 0.05);
    case 4:
    case 5:
    case 6:
        return q_aggregate(static_cast<Agg>(pick(rng, 3)), kParams[pick(rng, 2)],
                           fuzz_cmp(rng), pick(rng, 25) * 0.5 - 3.0);
    case 7:
        return q_not(fuzz_quality(rng, max_depth - 1));
    case 8: {
        std::vector<QualityPtr> ops{fuzz_quality(rng, max_depth - 1),
                                    fuzz_quality(rng, max_depth - 1)};
        return chance(rng, 0.5) ? q_and(std::move(ops)) : q_or(std::move(ops));
    }
    default:
        return q_implies(fuzz_quality(rng, max_depth - 1), fuzz_quality(rng, max_depth - 1));
    }
}

Trace fuzz_trace(std::mt19937_64& rng, std::size_t max_events, std::string id) {
    Trace t = fuzz_raw_trace(rng, max_events, std::move(id));
    return preprocess(t);
}

Trace fuzz_raw_trace(std::mt19937_64& rng, std::size_t max_events, std::string id) {
    Trace t;
    t.id = std::move(id);
    const std::size_t target = static_cast<std::size_t>(
        pick(rng, static_cast<int>(max_events) + 1));
    std::int64_t tau = 0;
    while (t.events.size() < target && static_cast<std::size_t>(tau) < max_events) {
        std::vector<std::string> props;
        for (const char* p : kProps)
            if (chance(rng, 0.35)) props.emplace_back(p);
        std::map<std::string, double> params;
        for (const char* p : kParams)
            if (chance(rng, 0.3)) params[p] = static_cast<double>(pick(rng, 13) - 3);
        t.events.push_back(make_event(tau, props, params));
        tau += 1 + pick(rng, 3); // leave gaps for preprocessing to fill
    }
    return t;
}

TraceSet fuzz_trace_set(std::mt19937_64& rng, std::size_t max_traces, std::size_t max_events) {
    const std::size_t count = 1 + static_cast<std::size_t>(
                                      pick(rng, static_cast<int>(max_traces)));
    TraceSet ts;
    for (std::size_t i = 0; i < count; ++i)
        ts.push_back(fuzz_trace(rng, max_events, "t" + std::to_string(i)));
    return ts;
}

FuzzReport fuzz_differential(const FuzzConfig& cfg) {
    FuzzReport report;
    if (!cfg.dump_dir.empty()) std::filesystem::create_directories(cfg.dump_dir);

    const auto record = [&](std::size_t idx, std::string kind, std::string formula,
                            const TraceSet& ts, std::string detail) {
        FuzzDivergence d{idx, std::move(kind), std::move(formula), dump_traces(ts),
                         std::move(detail)};
        if (!cfg.dump_dir.empty()) {
            std::ofstream out(std::filesystem::path(cfg.dump_dir) /
                              ("case" + std::to_string(idx) + ".txt"));
            out << "case " << idx << " (" << d.kind << ")\nformula: " << d.formula
                << "\ndetail: " << d.detail << "\ntraces:\n"
                << d.traces;
        }
        report.divergences.push_back(std::move(d));
    };

    for (std::size_t i = 0; i < cfg.cases; ++i) {
        std::mt19937_64 rng(splitmix64(cfg.seed + i));
        // Every 50th case runs against an empty set to pin the rejection rule.
        const TraceSet ts = (i % 50 == 49)
                                ? TraceSet{}
                                : fuzz_trace_set(rng, cfg.max_traces, cfg.max_events);
        ++report.cases;

        const TemporalPtr f = fuzz_temporal(rng, cfg.max_depth);
        for (const Trace& tr : ts) {
            const Verdict got = trace_handler(f, tr);
            const Verdict want = ref_verdict(f, tr);
            if (got.kind != want.kind) {
                record(i, "trace-verdict", to_string(f), {tr},
                       std::string("engine=") + verdict_name(got.kind) +
                           " reference=" + verdict_name(want.kind));
                break;
            }
            if (got.kind != VerdictKind::Inconclusive &&
                got.events_consumed != want.events_consumed) {
                record(i, "events-consumed", to_string(f), {tr},
                       "engine consumed " + std::to_string(got.events_consumed) +
                           ", reference " + std::to_string(want.events_consumed));
                break;
            }
        }

        const QualityPtr q = fuzz_quality(rng, cfg.max_depth);
        const bool got = monitor(q, ts).verdict;
        const bool want = !ts.empty() && ref_quality(q, ts);
        if (got != want) {
            record(i, "set-verdict", to_string(q), ts,
                   std::string("engine=") + (got ? "true" : "false") +
                       " reference=" + (want ? "true" : "false"));
        }
    }
    return report;
}

} // namespace qtwtl

#include "qtwtl/monitor.hpp"

#include <chrono>

#include <json.hpp>
#include <sys/resource.h>

#include "qtwtl/errors.hpp"
#include "qtwtl/quality.hpp"

namespace qtwtl {
namespace {

struct Eval {
    bool value = false;
    std::string why; // explanation when value is false
};

bool fold(VerdictKind k, OnInconclusive policy) {
    if (k == VerdictKind::True) return true;
    if (k == VerdictKind::Inconclusive) return policy == OnInconclusive::TreatTrue;
    return false;
}

Eval eval_quality(const QualityPtr& q, const TraceSet& ts, const MonitorConfig& cfg,
                  MonitorReport& rep) {
    switch (q->kind) {
    case QKind::Temporal: {
        const std::vector<VerdictKind> verdicts =
            evaluate_traces(q->phi, ts, cfg.rewrite(), cfg.jobs);
        OperatorReport op;
        op.op = "temporal";
        op.text = to_string(q->phi);
        op.verdict = true;
        Eval r{true, {}};
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            if (verdicts[i] == VerdictKind::Inconclusive) ++op.inconclusive;
            if (op.verdict && !fold(verdicts[i], cfg.inconclusive)) {
                op.verdict = false;
                op.failing_trace = ts[i].id;
                r.value = false;
                r.why = "trace `" + ts[i].id + "` does not satisfy " + op.text;
            }
        }
        rep.operators.push_back(std::move(op));
        return r;
    }
    case QKind::Count: {
        const CountEvaluation c =
            evaluate_count(q->phi, ts, q->cmp, q->bound, cfg.rewrite(),
                           cfg.inconclusive == OnInconclusive::TreatTrue, cfg.jobs);
        OperatorReport op;
        op.op = "count";
        op.text = to_string(q);
        op.verdict = c.verdict;
        op.value = c.fraction;
        op.inconclusive = c.inconclusive;
        rep.operators.push_back(std::move(op));
        if (c.verdict) return {true, {}};
        return {false, "C(" + to_string(q->phi) + ") = " + format_number(c.fraction) +
                           " violates " + std::string(to_symbol(q->cmp)) + " " +
                           format_number(q->bound)};
    }
    case QKind::Aggregate: {
        OperatorReport op;
        op.op = "aggregate";
        op.text = to_string(q);
        try {
            const AggregateEvaluation a = evaluate_aggregate(
                ts, q->sigma, q->param, q->cmp, q->bound, cfg.include_silent_zeros);
            op.verdict = a.verdict;
            op.value = a.failing_value;
            op.failing_column = a.failing_column;
        } catch (const UnknownParameter& e) {
            // A parameter the traces never carry cannot satisfy any bound;
            // treat the operator as unsatisfied rather than aborting.
            op.verdict = false;
            rep.operators.push_back(std::move(op));
            return {false, e.what()};
        }
        rep.operators.push_back(std::move(op));
        if (op.verdict) return {true, {}};
        return {false, "A_" + std::string(to_symbol(q->sigma)) + "(" + q->param + ") = " +
                           format_number(*op.value) + " at time index " +
                           std::to_string(*op.failing_column) + " violates " +
                           std::string(to_symbol(q->cmp)) + " " + format_number(q->bound)};
    }
    case QKind::Combo:
        break;
    }

    switch (q->op) {
    case BoolOp::Not: {
        const Eval a = eval_quality(q->operands[0], ts, cfg, rep);
        if (a.value) return {false, "!(" + to_string(q->operands[0]) + ") fails: operand holds"};
        return {true, {}};
    }
    case BoolOp::And: {
        for (const QualityPtr& c : q->operands) {
            const Eval a = eval_quality(c, ts, cfg, rep);
            if (!a.value) return a; // short-circuit: later conjuncts unevaluated
        }
        return {true, {}};
    }
    case BoolOp::Or: {
        std::string first_why;
        for (const QualityPtr& c : q->operands) {
            const Eval a = eval_quality(c, ts, cfg, rep);
            if (a.value) return {true, {}};
            if (first_why.empty()) first_why = a.why;
        }
        return {false, first_why.empty() ? "no disjunct holds" : first_why};
    }
    case BoolOp::Implies: {
        const Eval a = eval_quality(q->operands[0], ts, cfg, rep);
        if (!a.value) return {true, {}}; // vacuous
        return eval_quality(q->operands[1], ts, cfg, rep);
    }
    }
    throw InvariantViolation("unhandled quality formula shape");
}

} // namespace

OnInconclusive parse_on_inconclusive(const std::string& name) {
    if (name == "false") return OnInconclusive::TreatFalse;
    if (name == "true") return OnInconclusive::TreatTrue;
    if (name == "report") return OnInconclusive::Report;
    throw IoError("unknown inconclusive policy `" + name + "` (expected false, true or report)");
}

std::optional<std::int64_t> peak_memory_bytes() {
    rusage ru{};
    if (getrusage(RUSAGE_SELF, &ru) != 0) return std::nullopt;
    return static_cast<std::int64_t>(ru.ru_maxrss) * 1024; // reported in KiB on Linux
}

std::string MonitorReport::to_json() const {
    nlohmann::ordered_json j;
    j["verdict"] = verdict;
    if (cause) j["cause"] = *cause;
    j["operators"] = nlohmann::ordered_json::array();
    for (const OperatorReport& op : operators) {
        nlohmann::ordered_json o;
        o["op"] = op.op;
        o["text"] = op.text;
        o["verdict"] = op.verdict;
        if (op.value) o["value"] = *op.value;
        if (op.failing_column) o["failing_column"] = *op.failing_column;
        if (op.failing_trace) o["failing_trace"] = *op.failing_trace;
        if (op.inconclusive > 0) o["inconclusive"] = op.inconclusive;
        j["operators"].push_back(std::move(o));
    }
    j["wall_ms"] = wall_ms;
    if (peak_mem_bytes) j["peak_mem_bytes"] = *peak_mem_bytes;
    return j.dump();
}

MonitorReport monitor(const QualityPtr& formula, const TraceSet& ts, const MonitorConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    MonitorReport rep;
    if (ts.empty()) {
        rep.verdict = false;
        rep.cause = "empty trace set";
    } else {
        const Eval r = eval_quality(formula, ts, cfg, rep);
        rep.verdict = r.value;
        if (!r.value) rep.cause = r.why;
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.peak_mem_bytes = peak_memory_bytes();
    return rep;
}

} // namespace qtwtl

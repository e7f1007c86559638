// Formula progression over timed events.
//
// A temporal formula is monitored by rewriting it against one event at a
// time: `progress` consumes a single event and returns the obligation that
// remains, `reduce` folds constants out of the result, and `trace_handler`
// drives the loop over a whole trace, stopping as soon as the obligation
// collapses to a literal.
//
// The within operator `[f][a,b]` is progressed by attempting `f` now and
// keeping a narrowed window `[f][a+1,b]` as a fallback, so `b - a` acts as
// the remaining slack budget. A hold `H^d p` whose duration no longer fits
// the budget dies immediately. With `strict_within` set, a window with
// `a > 0` instead counts down both bounds without attempting `f`, delaying
// the first attempt until the lower bound has elapsed.
#pragma once

#include <cstddef>

#include "qtwtl/ast.hpp"
#include "qtwtl/trace.hpp"

namespace qtwtl {

enum class VerdictKind { True, False, Inconclusive };

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::size_t events_consumed = 0; // events read when the verdict landed
    TemporalPtr residual;            // pending obligation, set when inconclusive

    bool is_true() const { return kind == VerdictKind::True; }
    bool is_false() const { return kind == VerdictKind::False; }
    bool is_inconclusive() const { return kind == VerdictKind::Inconclusive; }
};

struct RewriteConfig {
    bool strict_within = false;
};

// One-step rewrite against a single event. The result is left un-reduced.
TemporalPtr progress(const TemporalPtr& f, const TimedEvent& e, const RewriteConfig& cfg = {});

// Constant folding: literals absorb through !, &&, || and concatenation
// (except that `f . true` must wait for f), and a unity window `[f][a,a]`
// collapses to f. Never grows the formula; idempotent. Under strict-within
// only `[f][0,0]` collapses, since a pending lower bound still delays f.
TemporalPtr reduce(const TemporalPtr& f, const RewriteConfig& cfg = {});

// Runs progress/reduce over the trace, stopping at the first literal.
Verdict trace_handler(const TemporalPtr& f, const Trace& t, const RewriteConfig& cfg = {});

} // namespace qtwtl

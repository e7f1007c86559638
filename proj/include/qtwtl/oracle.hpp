// Reference evaluation by direct recursion over the trace.
//
// `ref_eval` computes, without any rewriting, the verdict that the
// progression engine arrives at for a formula started at a given event
// index — including the index of the event on which the verdict lands and,
// for satisfied formulas, the index of the first event available to a
// concatenated successor. It exists purely as an independent
// implementation to differential-test the rewrite engine against.
//
// Conventions: a formula that resolves without consuming any event (e.g. a
// literal) reports `resolve = start - 1`. A hold hands over on the event
// that completed it (`next_start == resolve`); every other satisfied shape
// hands over on the following event, except where a surrounding operator
// collapsed away earlier and exposes the inner hand-over — the recursion
// mirrors those collapse rules case by case.
//
// `table1_holds` is a separate two-valued semantics where `[f][a,b]` means
// "f holds on a sub-window starting at offset >= a and ending by offset b".
// It intentionally differs from the progression on lower bounds and is used
// only to report where the two disagree.
#pragma once

#include <cstdint>

#include "qtwtl/ast.hpp"
#include "qtwtl/rewrite.hpp"
#include "qtwtl/trace.hpp"

namespace qtwtl {

struct RefOutcome {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::int64_t resolve = -1;    // event index where the verdict lands
    std::int64_t next_start = 0;  // successor start index (satisfied only)
    // Successor start index if an enclosing negation cancels into this
    // outcome (violated only). Constant folding strips double negations, so
    // a negated sub-formula that outlives its siblings continues bare and
    // positive; its own hand-over then shines through the outer negation.
    // Everywhere else a flipped verdict hands over on the following event.
    std::int64_t neg_next = 0;
};

// start may range over [0, |t|]; |t| means "past the end".
RefOutcome ref_eval(const TemporalPtr& f, const Trace& t, std::int64_t start = 0);

// Packages ref_eval(f, t, 0) the way trace_handler reports it.
Verdict ref_verdict(const TemporalPtr& f, const Trace& t);

bool table1_holds(const TemporalPtr& f, const Trace& t);

} // namespace qtwtl

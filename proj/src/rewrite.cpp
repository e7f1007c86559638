#include "qtwtl/rewrite.hpp"

namespace qtwtl {

TemporalPtr progress(const TemporalPtr& f, const TimedEvent& e, const RewriteConfig& cfg) {
    switch (f->kind) {
    case TKind::True:
    case TKind::False:
        return f;
    case TKind::Hold: {
        const bool present = e.has(f->prop);
        if (f->negated ? present : !present) return t_false();
        if (f->duration <= 1) return t_true();
        return hold(f->duration - 1, f->prop, f->negated);
    }
    case TKind::Not:
        return t_not(progress(f->lhs, e, cfg));
    case TKind::And:
        return t_and(progress(f->lhs, e, cfg), progress(f->rhs, e, cfg));
    case TKind::Or:
        return t_or(progress(f->lhs, e, cfg), progress(f->rhs, e, cfg));
    case TKind::Concat: {
        // The right side starts on the same event that finished the left
        // side, but only when the left side collapsed all the way to the
        // true literal in this step; composite results hand over after
        // reduction, i.e. on the next event.
        TemporalPtr a = progress(f->lhs, e, cfg);
        if (a->kind == TKind::True) return progress(f->rhs, e, cfg);
        return t_concat(a, f->rhs);
    }
    case TKind::Within: {
        if (cfg.strict_within && f->lo > 0) return within(f->lhs, f->lo - 1, f->hi - 1);
        if (f->lo == f->hi) return progress(f->lhs, e, cfg);
        if (f->lhs->kind == TKind::Hold && f->lhs->duration > f->hi - f->lo) return t_false();
        // Strict windows count the upper bound down (the lower bound is spent
        // by the time attempts begin); plain windows grow the lower bound
        // toward the fixed upper one. Both shrink the slack hi-lo by one.
        TemporalPtr fallback = cfg.strict_within ? within(f->lhs, 0, f->hi - 1)
                                                 : within(f->lhs, f->lo + 1, f->hi);
        return t_or(progress(f->lhs, e, cfg), std::move(fallback));
    }
    }
    return f; // unreachable
}

TemporalPtr reduce(const TemporalPtr& f, const RewriteConfig& cfg) {
    switch (f->kind) {
    case TKind::True:
    case TKind::False:
    case TKind::Hold:
        return f;
    case TKind::Not: {
        TemporalPtr a = reduce(f->lhs, cfg);
        if (a->kind == TKind::True) return t_false();
        if (a->kind == TKind::False) return t_true();
        if (a->kind == TKind::Not) return a->lhs;
        return a == f->lhs ? f : t_not(a);
    }
    case TKind::And: {
        TemporalPtr a = reduce(f->lhs, cfg);
        TemporalPtr b = reduce(f->rhs, cfg);
        if (a->kind == TKind::False || b->kind == TKind::False) return t_false();
        if (a->kind == TKind::True) return b;
        if (b->kind == TKind::True) return a;
        return (a == f->lhs && b == f->rhs) ? f : t_and(a, b);
    }
    case TKind::Or: {
        TemporalPtr a = reduce(f->lhs, cfg);
        TemporalPtr b = reduce(f->rhs, cfg);
        if (a->kind == TKind::True || b->kind == TKind::True) return t_true();
        if (a->kind == TKind::False) return b;
        if (b->kind == TKind::False) return a;
        return (a == f->lhs && b == f->rhs) ? f : t_or(a, b);
    }
    case TKind::Concat: {
        TemporalPtr a = reduce(f->lhs, cfg);
        TemporalPtr b = reduce(f->rhs, cfg);
        if (a->kind == TKind::False || b->kind == TKind::False) return t_false();
        if (a->kind == TKind::True) return b;
        // `a . true` stays: the tail resolves only once `a` has consumed
        // its events.
        return (a == f->lhs && b == f->rhs) ? f : t_concat(a, b);
    }
    case TKind::Within: {
        TemporalPtr a = reduce(f->lhs, cfg);
        if (f->lo == f->hi && (!cfg.strict_within || f->lo == 0)) return a;
        return a == f->lhs ? f : within(a, f->lo, f->hi);
    }
    }
    return f; // unreachable
}

Verdict trace_handler(const TemporalPtr& f0, const Trace& t, const RewriteConfig& cfg) {
    TemporalPtr f = reduce(f0, cfg);
    if (f->kind == TKind::True) return {VerdictKind::True, 0, nullptr};
    if (f->kind == TKind::False) return {VerdictKind::False, 0, nullptr};
    std::size_t consumed = 0;
    for (const TimedEvent& e : t.events) {
        f = reduce(progress(f, e, cfg), cfg);
        ++consumed;
        if (f->kind == TKind::True) return {VerdictKind::True, consumed, nullptr};
        if (f->kind == TKind::False) return {VerdictKind::False, consumed, nullptr};
    }
    return {VerdictKind::Inconclusive, consumed, f};
}

} // namespace qtwtl

#include "qtwtl/oracle.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "qtwtl/rewrite.hpp"

namespace qtwtl {
namespace {

using K = VerdictKind;

RefOutcome out_true(std::int64_t resolve, std::int64_t next_start) {
    return {K::True, resolve, next_start, 0};
}

RefOutcome out_false(std::int64_t resolve, std::int64_t neg_next) {
    return {K::False, resolve, 0, neg_next};
}

// By default a violation flipped by an enclosing negation hands over on the
// following event; callers that know the dying sub-term was running bare
// pass its own hand-over instead.
RefOutcome out_false(std::int64_t resolve) { return out_false(resolve, resolve + 1); }

RefOutcome out_inc() { return {K::Inconclusive, -1, 0, 0}; }

std::int64_t len(const Trace& t) { return static_cast<std::int64_t>(t.events.size()); }

RefOutcome eval_hold(const TemporalFormula& f, const Trace& t, std::int64_t i) {
    const std::int64_t span = std::max(1, f.duration);
    for (std::int64_t k = 0; k < span; ++k) {
        if (i + k >= len(t)) return out_inc();
        const bool present = t.events[static_cast<std::size_t>(i + k)].has(f.prop);
        if (f.negated ? present : !present) return out_false(i + k);
    }
    // Hand-over happens on the completing event itself.
    return out_true(i + span - 1, i + span - 1);
}

RefOutcome eval_and(const RefOutcome& a, const RefOutcome& b) {
    if (a.kind == K::False && b.kind == K::False)
        return out_false(std::min(a.resolve, b.resolve));
    if (a.kind == K::False || b.kind == K::False) {
        const RefOutcome& dead = a.kind == K::False ? a : b;
        const RefOutcome& live = a.kind == K::False ? b : a;
        // The conjunction folds away once the other side is satisfied; if
        // that happened strictly earlier, the dying side was running bare.
        const bool bare = live.kind == K::True && live.resolve < dead.resolve;
        return out_false(dead.resolve, bare ? dead.neg_next : dead.resolve + 1);
    }
    if (a.kind == K::Inconclusive || b.kind == K::Inconclusive) return out_inc();
    // Both satisfied: the later side is still in flight when the earlier one
    // finishes, so its hand-over survives; a tie collapses after the event.
    if (a.resolve == b.resolve) return out_true(a.resolve, a.resolve + 1);
    const RefOutcome& late = a.resolve > b.resolve ? a : b;
    return out_true(late.resolve, late.next_start);
}

RefOutcome eval_or(const RefOutcome& a, const RefOutcome& b) {
    const bool at = a.kind == K::True;
    const bool bt = b.kind == K::True;
    if (at || bt) {
        const RefOutcome& win = (at && (!bt || a.resolve <= b.resolve)) ? a : b;
        const RefOutcome& other = (&win == &a) ? b : a;
        // The winner's hand-over survives only if the other side died
        // strictly earlier; otherwise the disjunction itself is still
        // standing on the resolving event and collapses after it.
        const bool adopt = other.kind == K::False && other.resolve < win.resolve;
        return out_true(win.resolve, adopt ? win.next_start : win.resolve + 1);
    }
    if (a.kind == K::Inconclusive || b.kind == K::Inconclusive) return out_inc();
    // Both violated: the survivor was running bare iff the other side died
    // strictly earlier (mirror of the hand-over adoption above).
    const RefOutcome& late = a.resolve >= b.resolve ? a : b;
    const RefOutcome& early = (&late == &a) ? b : a;
    const bool bare = early.resolve < late.resolve;
    return out_false(late.resolve, bare ? late.neg_next : late.resolve + 1);
}

RefOutcome eval(const TemporalPtr& f, const Trace& t, std::int64_t i);

RefOutcome eval_within(const TemporalFormula& f, const Trace& t, std::int64_t i) {
    // The monitor folds constants out of the obligation after every step, so
    // the shape-driven rules below must see the inner formula the way the
    // monitor does: in reduced form.
    const TemporalPtr inner = reduce(f.lhs);
    if (f.lo == f.hi) return eval(inner, t, i); // unity window is the identity
    const std::int64_t m = f.hi - f.lo;         // slack budget
    const std::int64_t n = len(t);
    const bool hold_inner = inner->kind == TKind::Hold;
    const std::int64_t d = hold_inner ? inner->duration : 0;
    if (hold_inner && d > m) return i < n ? out_false(i) : out_inc();

    // The window spawns one attempt of the inner formula per event. A hold
    // inner with d >= 2 stops spawning once the remaining budget cannot fit
    // it and the narrowed window dies on that event instead.
    const std::int64_t kmax = (hold_inner && d >= 2) ? m - d : m;
    std::vector<RefOutcome> branches;
    branches.reserve(static_cast<std::size_t>(kmax) + 2);
    for (std::int64_t k = 0; k <= kmax; ++k) {
        const std::int64_t j = i + k;
        RefOutcome o = eval(inner, t, std::min(j, n));
        // A branch cannot resolve before it materializes: on its spawn
        // event, or one earlier for the final attempt, which a collapsing
        // unity window exposes ahead of time.
        const std::int64_t floor = (k == m) ? j - 1 : j;
        if (o.kind != K::Inconclusive) {
            if (o.resolve < floor) {
                o.resolve = floor;
                // Dying at the floor is the window machinery collapsing, not
                // the attempt itself, so any negation of it defers.
                if (o.kind == K::False) o.neg_next = o.resolve + 1;
            }
            if (o.resolve >= n) o = out_inc();
        }
        branches.push_back(o);
    }
    if (hold_inner && d >= 2) {
        const std::int64_t death = i + (m - d) + 1;
        branches.push_back(death < n ? out_false(death) : out_inc());
    }

    const RefOutcome* winner = nullptr;
    for (const RefOutcome& o : branches)
        if (o.kind == K::True && (!winner || o.resolve < winner->resolve)) winner = &o;
    if (winner) {
        bool adopt = true;
        for (const RefOutcome& o : branches) {
            if (&o == winner) continue;
            if (!(o.kind == K::False && o.resolve < winner->resolve)) adopt = false;
        }
        return out_true(winner->resolve, adopt ? winner->next_start : winner->resolve + 1);
    }
    std::int64_t worst = -1;
    const RefOutcome* last = nullptr;
    bool tied = false;
    for (const RefOutcome& o : branches) {
        if (o.kind == K::Inconclusive) return out_inc();
        if (o.resolve > worst) {
            worst = o.resolve;
            last = &o;
            tied = false;
        } else if (o.resolve == worst) {
            tied = true;
        }
    }
    // The last alternative to die was running bare iff every other one died
    // strictly earlier.
    return out_false(worst, (last && !tied) ? last->neg_next : worst + 1);
}

RefOutcome eval(const TemporalPtr& f, const Trace& t, std::int64_t i) {
    switch (f->kind) {
    case TKind::True:
        return out_true(i - 1, i);
    case TKind::False:
        return out_false(i - 1);
    case TKind::Hold:
        return eval_hold(*f, t, i);
    case TKind::Not: {
        // Constant folding keeps the monitored obligation free of double
        // negations and collapsed unity windows, so evaluate the reduced
        // child: a negation that reduces away exposes the positive form,
        // whose own hand-over behaviour applies.
        const TemporalPtr g = reduce(f->lhs);
        if (g->kind == TKind::True) return out_false(i - 1);
        if (g->kind == TKind::False) return out_true(i - 1, i);
        if (g->kind == TKind::Not) return eval(g->lhs, t, i);
        RefOutcome a = eval(g, t, i);
        if (a.kind == K::True) return out_false(a.resolve, a.next_start);
        if (a.kind == K::False) return out_true(a.resolve, a.neg_next);
        return out_inc();
    }
    case TKind::And:
        return eval_and(eval(f->lhs, t, i), eval(f->rhs, t, i));
    case TKind::Or:
        return eval_or(eval(f->lhs, t, i), eval(f->rhs, t, i));
    case TKind::Concat: {
        // A statically-false tail sinks the whole chain up front.
        RefOutcome probe = eval(f->rhs, t, i);
        if (probe.kind == K::False && probe.resolve == i - 1) return out_false(i - 1);
        RefOutcome a = eval(f->lhs, t, i);
        if (a.kind == K::Inconclusive) return a;
        // The chain node is still wrapping the left side when it dies, so a
        // flipped verdict defers; the right side runs bare once handed over.
        if (a.kind == K::False) return out_false(a.resolve);
        RefOutcome b = eval(f->rhs, t, a.next_start);
        if (b.kind == K::Inconclusive) return b;
        if (b.kind == K::False) {
            // The right side stands bare only from the step after the left
            // side completed; dying on the handover event itself still sees
            // the chain node around it.
            const bool bare = b.resolve > a.resolve;
            return out_false(b.resolve, bare ? b.neg_next : b.resolve + 1);
        }
        return out_true(std::max(a.resolve, b.resolve), b.next_start);
    }
    case TKind::Within:
        return eval_within(*f, t, i);
    }
    return out_inc(); // unreachable
}

// --- two-valued window-deadline semantics -------------------------------

// End positions j (inclusive; start-1 encodes the empty span) such that f
// holds exactly on t[start..j].
std::set<std::int64_t> ends(const TemporalPtr& f, const Trace& t, std::int64_t start) {
    const std::int64_t n = len(t);
    std::set<std::int64_t> out;
    switch (f->kind) {
    case TKind::True:
        out.insert(start - 1);
        break;
    case TKind::False:
        break;
    case TKind::Hold: {
        const std::int64_t span = std::max(1, f->duration);
        const std::int64_t j = start + span - 1;
        if (j >= n) break;
        bool ok = true;
        for (std::int64_t k = start; k <= j; ++k) {
            const bool present = t.events[static_cast<std::size_t>(k)].has(f->prop);
            if (f->negated ? present : !present) ok = false;
        }
        if (ok) out.insert(j);
        break;
    }
    case TKind::Not: {
        const std::set<std::int64_t> in = ends(f->lhs, t, start);
        for (std::int64_t j = start - 1; j < n; ++j)
            if (!in.count(j)) out.insert(j);
        break;
    }
    case TKind::And: {
        const std::set<std::int64_t> a = ends(f->lhs, t, start);
        for (std::int64_t j : ends(f->rhs, t, start))
            if (a.count(j)) out.insert(j);
        break;
    }
    case TKind::Or: {
        out = ends(f->lhs, t, start);
        const std::set<std::int64_t> b = ends(f->rhs, t, start);
        out.insert(b.begin(), b.end());
        break;
    }
    case TKind::Concat: {
        for (std::int64_t k : ends(f->lhs, t, start)) {
            const std::set<std::int64_t> b = ends(f->rhs, t, k + 1);
            out.insert(b.begin(), b.end());
        }
        break;
    }
    case TKind::Within: {
        for (std::int64_t u = f->lo; u <= f->hi; ++u) {
            if (start + u > n) break;
            for (std::int64_t j : ends(f->lhs, t, start + u))
                if (j <= start + f->hi) out.insert(j);
        }
        break;
    }
    }
    return out;
}

} // namespace

RefOutcome ref_eval(const TemporalPtr& f, const Trace& t, std::int64_t start) {
    return eval(f, t, start);
}

Verdict ref_verdict(const TemporalPtr& f, const Trace& t) {
    const RefOutcome o = eval(f, t, 0);
    switch (o.kind) {
    case K::True:
        return {K::True, static_cast<std::size_t>(o.resolve + 1), nullptr};
    case K::False:
        return {K::False, static_cast<std::size_t>(o.resolve + 1), nullptr};
    default:
        return {K::Inconclusive, t.events.size(), nullptr};
    }
}

bool table1_holds(const TemporalPtr& f, const Trace& t) {
    return !ends(f, t, 0).empty();
}

} // namespace qtwtl

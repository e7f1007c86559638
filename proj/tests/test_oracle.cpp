#include <doctest.h>

#include <string>
#include <vector>

#include "qtwtl/ast.hpp"
#include "qtwtl/fuzz.hpp"
#include "qtwtl/oracle.hpp"
#include "qtwtl/rewrite.hpp"
#include "qtwtl/trace.hpp"
#include "qtwtl/tracegen.hpp"

using namespace qtwtl;

namespace {

Trace tr(const std::vector<std::vector<std::string>>& rows) {
    Trace t;
    t.id = "t";
    for (std::size_t z = 0; z < rows.size(); ++z) {
        if (rows[z].empty())
            t.events.push_back(silent_event(static_cast<std::int64_t>(z)));
        else
            t.events.push_back(make_event(static_cast<std::int64_t>(z), rows[z]));
    }
    return t;
}

void agree(const TemporalPtr& f, const Trace& t) {
    CAPTURE(to_string(f));
    Verdict engine = trace_handler(f, t);
    Verdict ref = ref_verdict(f, t);
    CHECK(engine.kind == ref.kind);
    if (!engine.is_inconclusive()) CHECK(engine.events_consumed == ref.events_consumed);
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("literals and holds resolve where expected") {
    Trace t = tr({{"p"}, {"p"}, {}});

    RefOutcome tt = ref_eval(t_true(), t, 0);
    CHECK(tt.kind == VerdictKind::True);
    CHECK(tt.resolve == -1); // resolved before consuming anything
    CHECK(tt.next_start == 0);

    RefOutcome h1 = ref_eval(hold(1, "p"), t, 0);
    CHECK(h1.kind == VerdictKind::True);
    CHECK(h1.resolve == 0);
    CHECK(h1.next_start == 0); // hold hands over on its own last event

    RefOutcome h2 = ref_eval(hold(2, "p"), t, 0);
    CHECK(h2.kind == VerdictKind::True);
    CHECK(h2.resolve == 1);
    CHECK(h2.next_start == 1);

    RefOutcome miss = ref_eval(hold(3, "p"), t, 0);
    CHECK(miss.kind == VerdictKind::False);
    CHECK(miss.resolve == 2);

    Trace all_p = tr({{"p"}, {"p"}, {"p"}});
    RefOutcome inc = ref_eval(hold(2, "p"), all_p, 2);
    CHECK(inc.kind == VerdictKind::Inconclusive);
}

TEST_CASE("negation flips and defers the hand-over to the next event") {
    Trace t = tr({{"q"}, {"p"}});
    RefOutcome n = ref_eval(t_not(hold(1, "p")), t, 0);
    CHECK(n.kind == VerdictKind::True);
    CHECK(n.resolve == 0);
    CHECK(n.next_start == 1); // unlike a bare hold, ! does not share its event
}

TEST_CASE("reference matches the engine on the worked window examples") {
    agree(within(hold(2, "S1"), 0, 4), tr({{}, {"S1"}, {"S1"}, {}, {}}));
    agree(within(hold(2, "p"), 0, 3), tr({{}, {}, {"p"}, {"p"}}));
    agree(within(hold(1, "p"), 1, 2), tr({{"p"}, {}, {}}));
    agree(t_concat(hold(1, "p"), hold(1, "q")), tr({{"p", "q"}}));
    agree(t_concat(hold(1, "p"), hold(1, "q")), tr({{"p"}, {"q"}}));
}

TEST_CASE("a window whose alternatives all died hands over on its own event") {
    // [H^3 p][0,3] can only start at offset 0; by the time it completes, the
    // fallback window is dead, so a successor reads the completing event.
    auto f = t_concat(within(hold(3, "p"), 0, 3), hold(1, "q"));
    Trace share = tr({{"p"}, {"p"}, {"p", "q"}, {}});
    Verdict v = trace_handler(f, share);
    CHECK(v.is_true());
    CHECK(v.events_consumed == 3);
    agree(f, share);

    Trace late = tr({{"p"}, {"p"}, {"p"}, {"q"}});
    CHECK(trace_handler(f, late).is_false());
    agree(f, late);
}

TEST_CASE("a window with live alternatives hands over one event later") {
    auto f = t_concat(within(hold(1, "p"), 0, 3), hold(1, "q"));
    Trace next = tr({{}, {"p"}, {"q"}});
    Verdict v = trace_handler(f, next);
    CHECK(v.is_true());
    CHECK(v.events_consumed == 3);
    agree(f, next);

    Trace same = tr({{}, {"p", "q"}, {}});
    CHECK(trace_handler(f, same).is_false());
    agree(f, same);
}

TEST_CASE("concatenation rejects on a right side that is already dead") {
    // The right side is unsatisfiable from any start; the engine notices as
    // soon as the left side completes.
    auto f = t_concat(hold(1, "p"), t_false());
    Trace t = tr({{"p"}, {}});
    agree(f, t);
    CHECK(ref_verdict(f, t).is_false());
}

TEST_CASE("verdicts cover empty traces") {
    Trace empty;
    empty.id = "e";
    CHECK(ref_verdict(hold(1, "p"), empty).is_inconclusive());
    CHECK(ref_verdict(t_true(), empty).is_true());
    CHECK(ref_verdict(t_false(), empty).is_false());
    agree(hold(1, "p"), empty);
    agree(t_true(), empty);
}

TEST_CASE("two-valued window semantics enforces the lower bound") {
    // Progression treats [a,b] lower bounds as inert; the two-valued reading
    // requires the sub-window to start at offset >= a. This is exactly where
    // the two semantics part ways, so both readings are pinned here.
    auto f = within(hold(1, "p"), 1, 2);
    Trace early = tr({{"p"}, {}, {}});
    CHECK(trace_handler(f, early).is_true());
    CHECK_FALSE(table1_holds(f, early));

    Trace inside = tr({{}, {"p"}, {}});
    CHECK(trace_handler(f, inside).is_true());
    CHECK(table1_holds(f, inside));

    CHECK(table1_holds(hold(2, "p"), tr({{"p"}, {"p"}})));
    CHECK_FALSE(table1_holds(hold(2, "p"), tr({{"p"}, {}})));

    // Concatenation is the other split: progression hands the completing
    // event over to the right side, while the two-valued reading starts the
    // right side strictly after the left side's end.
    auto seq = t_concat(hold(1, "p"), hold(1, "q"));
    CHECK(trace_handler(seq, tr({{"p", "q"}})).is_true());
    CHECK_FALSE(table1_holds(seq, tr({{"p", "q"}})));
    CHECK(trace_handler(seq, tr({{"p"}, {"q"}})).is_false());
    CHECK(table1_holds(seq, tr({{"p"}, {"q"}})));
}

TEST_CASE("random formulas and traces agree with the engine") {
    for (std::uint64_t i = 0; i < 3000; ++i) {
        std::mt19937_64 rng(splitmix64(0xacc0de + i));
        TemporalPtr f = fuzz_temporal(rng, 3);
        Trace t = fuzz_trace(rng, 8, "t" + std::to_string(i));
        CAPTURE(i);
        agree(f, t);
    }
}

} // TEST_SUITE

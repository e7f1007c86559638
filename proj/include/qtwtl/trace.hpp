// Timed traces: integer-stamped events carrying proposition sets and named
// numeric parameters, plus the preprocessing that rewriting relies on
// (dense time axis, silent filler events, common length across a set).
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtwtl/errors.hpp"

namespace qtwtl {

struct TimedEvent {
    std::int64_t tau = 0;
    std::vector<std::string> props;        // sorted, unique
    std::map<std::string, double> params;
    bool silent = false;

    bool has(const std::string& prop) const;
    friend bool operator==(const TimedEvent&, const TimedEvent&) = default;
};

TimedEvent silent_event(std::int64_t tau);
TimedEvent make_event(std::int64_t tau, std::vector<std::string> props,
                      std::map<std::string, double> params = {});

struct Trace {
    std::string id;
    std::vector<TimedEvent> events;

    friend bool operator==(const Trace&, const Trace&) = default;
};

using TraceSet = std::vector<Trace>;

// Validates that time-stamps are nonnegative and strictly increasing, then
// fills every missing integer stamp from 0 through the last stamp with a
// silent event. Original events are kept verbatim; idempotent.
Trace preprocess(const Trace& t);
TraceSet preprocess(const TraceSet& ts);

// Pads every (preprocessed) trace with trailing silent events up to the
// length of the longest trace in the set. Throws EmptyTraceSet on {}.
TraceSet synchronize(TraceSet ts);

// Per-time-point view of one parameter across the set: columns[z] lists the
// values of `param` at time z from every trace that carries it there, in set
// order. Silent events and events without the parameter contribute nothing;
// include_silent_zeros re-adds the literal filler value 0 for silent events.
// Throws UnknownParameter when the parameter occurs on no event of any trace.
struct ProjectionTable {
    std::string param;
    std::vector<std::vector<double>> columns;
};

ProjectionTable project(const TraceSet& ts, const std::string& param,
                        bool include_silent_zeros = false);

} // namespace qtwtl

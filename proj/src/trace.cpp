#include "qtwtl/trace.hpp"

#include <algorithm>

namespace qtwtl {

bool TimedEvent::has(const std::string& prop) const {
    return std::binary_search(props.begin(), props.end(), prop);
}

TimedEvent silent_event(std::int64_t tau) {
    TimedEvent e;
    e.tau = tau;
    e.silent = true;
    return e;
}

TimedEvent make_event(std::int64_t tau, std::vector<std::string> props,
                      std::map<std::string, double> params) {
    TimedEvent e;
    e.tau = tau;
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());
    e.props = std::move(props);
    e.params = std::move(params);
    e.silent = e.props.empty() && e.params.empty();
    return e;
}

Trace preprocess(const Trace& t) {
    Trace out;
    out.id = t.id;
    if (t.events.empty()) return out;

    std::int64_t prev = -1;
    for (const auto& ev : t.events) {
        if (ev.tau < 0) {
            throw NonMonotonicTrace("trace '" + t.id + "': negative time-stamp " +
                                    std::to_string(ev.tau));
        }
        if (ev.tau <= prev) {
            throw NonMonotonicTrace("trace '" + t.id + "': time-stamp " +
                                    std::to_string(ev.tau) +
                                    " does not increase past " + std::to_string(prev));
        }
        prev = ev.tau;
    }

    const std::int64_t last = t.events.back().tau;
    out.events.reserve(static_cast<std::size_t>(last) + 1);
    std::size_t src = 0;
    for (std::int64_t tau = 0; tau <= last; ++tau) {
        if (src < t.events.size() && t.events[src].tau == tau) {
            out.events.push_back(t.events[src]);
            ++src;
        } else {
            out.events.push_back(silent_event(tau));
        }
    }
    return out;
}

TraceSet preprocess(const TraceSet& ts) {
    TraceSet out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(preprocess(t));
    return out;
}

TraceSet synchronize(TraceSet ts) {
    if (ts.empty()) throw EmptyTraceSet("cannot synchronize an empty trace set");
    std::size_t longest = 0;
    for (const auto& t : ts) longest = std::max(longest, t.events.size());
    for (auto& t : ts) {
        while (t.events.size() < longest) {
            t.events.push_back(silent_event(static_cast<std::int64_t>(t.events.size())));
        }
    }
    return ts;
}

ProjectionTable project(const TraceSet& ts, const std::string& param,
                        bool include_silent_zeros) {
    bool seen = false;
    std::size_t longest = 0;
    for (const auto& t : ts) {
        longest = std::max(longest, t.events.size());
        if (!seen) {
            for (const auto& ev : t.events) {
                if (!ev.silent && ev.params.count(param)) {
                    seen = true;
                    break;
                }
            }
        }
    }
    if (!seen) {
        throw UnknownParameter("parameter '" + param + "' occurs in no trace");
    }

    ProjectionTable table;
    table.param = param;
    table.columns.resize(longest);
    for (const auto& t : ts) {
        for (std::size_t z = 0; z < t.events.size(); ++z) {
            const auto& ev = t.events[z];
            if (ev.silent) {
                if (include_silent_zeros) table.columns[z].push_back(0.0);
                continue;
            }
            auto it = ev.params.find(param);
            if (it != ev.params.end()) table.columns[z].push_back(it->second);
        }
    }
    return table;
}

} // namespace qtwtl

// Randomised differential testing.
//
// Each case draws a random trace set and random formulas, runs the rewrite
// engine, and checks it against the recursive reference evaluator: verdicts
// and the number of events consumed must agree per trace, and quality-level
// verdicts must agree per set. Any disagreement is captured with enough
// material (formula text plus traces as JSONL) to replay it by hand.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qtwtl/ast.hpp"
#include "qtwtl/trace.hpp"

namespace qtwtl {

struct FuzzConfig {
    std::uint64_t seed = 1;
    std::size_t cases = 10000;
    int max_depth = 4;
    std::size_t max_events = 12;
    std::size_t max_traces = 5;
    std::string dump_dir; // when set, each divergence is written to a file
};

struct FuzzDivergence {
    std::size_t case_index = 0;
    std::string kind;     // "trace-verdict" | "events-consumed" | "set-verdict"
    std::string formula;
    std::string traces;   // JSONL dump
    std::string detail;
};

struct FuzzReport {
    std::size_t cases = 0;
    std::vector<FuzzDivergence> divergences;
    bool clean() const { return divergences.empty(); }
};

FuzzReport fuzz_differential(const FuzzConfig& cfg);

// Building blocks, exposed for the property-based tests.
TemporalPtr fuzz_temporal(std::mt19937_64& rng, int max_depth);
TemporalPtr fuzz_closed_temporal(std::mt19937_64& rng, int max_depth); // no propositions
QualityPtr fuzz_quality(std::mt19937_64& rng, int max_depth);
Trace fuzz_trace(std::mt19937_64& rng, std::size_t max_events, std::string id);
// Sparse, not yet preprocessed: gaps between time stamps stay unfilled.
Trace fuzz_raw_trace(std::mt19937_64& rng, std::size_t max_events, std::string id);
TraceSet fuzz_trace_set(std::mt19937_64& rng, std::size_t max_traces, std::size_t max_events);

} // namespace qtwtl

// Trace serialization.
//
// JSONL: one event per line, {"trace": id, "tau": n, "events": [props...],
// "params": {name: value}}. Lines of one trace appear in time order; a file
// may interleave traces. Silent filler events are not written, except that a
// trace ending in silence gets one final empty-event line so its horizon
// survives a round trip.
//
// CSV: one file per trace (the trace id is the file stem), one row per
// time-stamp, header `timestamp,<props...>,<params...>`. Proposition cells
// are T/F (blank reads as F); parameter cells are a number or `-` for
// absent. Columns are classified by their cell values.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qtwtl/trace.hpp"

namespace qtwtl {

enum class TraceFormat { Jsonl, Csv };

// "jsonl" or "csv"; throws IoError otherwise.
TraceFormat parse_trace_format(const std::string& name);

// Loads from a file or from every matching file in a directory (sorted by
// file name). Traces are validated and preprocessed; the resulting set is
// ordered by (file order, trace id). Throws IoError / FormatError /
// NonMonotonicTrace.
TraceSet load_traces(const std::string& path, TraceFormat format);

void write_jsonl(const TraceSet& ts, std::ostream& os);

struct CsvColumn {
    std::string name;
    bool is_param = false;
};

// CSV column order is explicit so generated files match a fixed schema; when
// empty, columns are collected from the trace (propositions first, then
// parameters, each sorted by name).
std::string to_csv(const Trace& t, const std::vector<CsvColumn>& columns = {});

// JSONL: writes one file at `path`. CSV: treats `path` as a directory and
// writes one `<id>.csv` per trace.
void save_traces(const TraceSet& ts, const std::string& path, TraceFormat format,
                 const std::vector<CsvColumn>& columns = {});

} // namespace qtwtl

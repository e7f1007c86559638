#include "qtwtl/trace_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qtwtl/ast.hpp"
#include "qtwtl/errors.hpp"

namespace fs = std::filesystem;

namespace qtwtl {
namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = first + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

// Accumulates events per trace id, preserving the order in which ids were
// first seen so that a multi-file load is deterministic.
class TraceBuilder {
public:
    TimedEvent& event_for(const std::string& id, std::int64_t tau) {
        auto it = index_.find(id);
        if (it == index_.end()) {
            it = index_.emplace(id, traces_.size()).first;
            traces_.push_back(Trace{id, {}});
        }
        Trace& t = traces_[it->second];
        if (!t.events.empty() && t.events.back().tau == tau) return t.events.back();
        t.events.push_back(silent_event(tau));
        return t.events.back();
    }

    TraceSet finish() {
        std::stable_sort(traces_.begin(), traces_.end(),
                         [](const Trace& a, const Trace& b) { return a.id < b.id; });
        for (Trace& t : traces_) {
            for (TimedEvent& e : t.events) {
                std::sort(e.props.begin(), e.props.end());
                e.props.erase(std::unique(e.props.begin(), e.props.end()), e.props.end());
                e.silent = e.props.empty() && e.params.empty();
            }
            t = preprocess(t);
        }
        return std::move(traces_);
    }

private:
    std::map<std::string, std::size_t> index_;
    TraceSet traces_;
};

void load_jsonl_file(const fs::path& path, TraceBuilder& builder) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw FormatError(path.string() + ": " + e.what(), lineno);
        }
        if (!j.is_object()) throw FormatError(path.string() + ": event is not an object", lineno);
        if (!j.contains("trace") || !j["trace"].is_string())
            throw FormatError(path.string() + ": missing string field \"trace\"", lineno);
        if (!j.contains("tau") || !j["tau"].is_number_integer())
            throw FormatError(path.string() + ": missing integer field \"tau\"", lineno);
        const std::string id = j["trace"].get<std::string>();
        const std::int64_t tau = j["tau"].get<std::int64_t>();
        if (tau < 0) throw FormatError(path.string() + ": negative time stamp", lineno);

        TimedEvent& e = builder.event_for(id, tau);
        if (j.contains("events")) {
            if (!j["events"].is_array())
                throw FormatError(path.string() + ": \"events\" is not an array", lineno);
            for (const auto& p : j["events"]) {
                if (!p.is_string() || !is_identifier(p.get<std::string>()))
                    throw FormatError(path.string() + ": proposition is not an identifier", lineno);
                e.props.push_back(p.get<std::string>());
            }
        }
        if (j.contains("params")) {
            if (!j["params"].is_object())
                throw FormatError(path.string() + ": \"params\" is not an object", lineno);
            for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
                if (!is_identifier(it.key()) || !it.value().is_number())
                    throw FormatError(path.string() + ": parameter " + it.key() +
                                          " is not a numeric identifier entry",
                                      lineno);
                e.params[it.key()] = it.value().get<double>();
            }
        }
    }
}

std::vector<std::string> split_csv_row(const std::string& line) {
    // Cells never contain commas or quotes in this schema; plain split.
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

void load_csv_file(const fs::path& path, TraceBuilder& builder) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path.string() + ": empty file", 1);
    const std::vector<std::string> header = split_csv_row(line);
    if (header.empty() || header[0] != "timestamp")
        throw FormatError(path.string() + ": first column must be `timestamp`", 1);
    for (std::size_t c = 1; c < header.size(); ++c)
        if (!is_identifier(header[c]))
            throw FormatError(path.string() + ": column name `" + header[c] +
                                  "` is not an identifier",
                              1);

    std::vector<std::vector<std::string>> rows;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> cells = split_csv_row(line);
        if (cells.size() != header.size())
            throw FormatError(path.string() + ": expected " + std::to_string(header.size()) +
                                  " cells, got " + std::to_string(cells.size()),
                              lineno);
        rows.push_back(std::move(cells));
    }

    // A column holding only T/F (or blanks) is a proposition; otherwise every
    // cell must be a number, `-`, or blank, making it a parameter.
    std::vector<bool> is_prop(header.size(), true);
    for (std::size_t c = 1; c < header.size(); ++c) {
        for (const auto& row : rows) {
            const std::string& v = row[c];
            if (v.empty() || v == "T" || v == "F") continue;
            is_prop[c] = false;
            break;
        }
    }

    const std::string id = path.stem().string();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const long rowline = static_cast<long>(r) + 2;
        std::int64_t tau = 0;
        {
            const char* first = row[0].data();
            const char* last = first + row[0].size();
            auto [ptr, ec] = std::from_chars(first, last, tau);
            if (ec != std::errc{} || ptr != last || tau < 0)
                throw FormatError(path.string() + ": bad time stamp `" + row[0] + "`", rowline);
        }
        TimedEvent& e = builder.event_for(id, tau);
        for (std::size_t c = 1; c < header.size(); ++c) {
            const std::string& v = row[c];
            if (is_prop[c]) {
                if (v == "T") e.props.push_back(header[c]);
            } else {
                if (v.empty() || v == "-") continue;
                double x = 0;
                if (!parse_double(v, x))
                    throw FormatError(path.string() + ": bad value `" + v + "` in column `" +
                                          header[c] + "`",
                                      rowline);
                e.params[header[c]] = x;
            }
        }
    }
}

const char* extension_of(TraceFormat f) { return f == TraceFormat::Jsonl ? ".jsonl" : ".csv"; }

} // namespace

TraceFormat parse_trace_format(const std::string& name) {
    if (name == "jsonl") return TraceFormat::Jsonl;
    if (name == "csv") return TraceFormat::Csv;
    throw IoError("unknown trace format `" + name + "` (expected jsonl or csv)");
}

TraceSet load_traces(const std::string& path, TraceFormat format) {
    std::vector<fs::path> files;
    fs::path p(path);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
        for (const auto& entry : fs::directory_iterator(p)) {
            if (entry.is_regular_file() && entry.path().extension() == extension_of(format))
                files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        // A directory without matching files is an empty trace set, not an IO
        // error: the monitor folds it to a false verdict rather than a crash.
        if (files.empty()) return {};
    } else if (fs::exists(p, ec)) {
        files.push_back(p);
    } else {
        throw IoError("no such file or directory: " + path);
    }

    TraceSet out;
    for (const fs::path& file : files) {
        TraceBuilder builder;
        if (format == TraceFormat::Jsonl)
            load_jsonl_file(file, builder);
        else
            load_csv_file(file, builder);
        TraceSet part = builder.finish();
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

void write_jsonl(const TraceSet& ts, std::ostream& os) {
    for (const Trace& t : ts) {
        for (std::size_t i = 0; i < t.events.size(); ++i) {
            const TimedEvent& e = t.events[i];
            const bool horizon = e.silent && i + 1 == t.events.size();
            if (e.silent && !horizon) continue;
            nlohmann::ordered_json j;
            j["trace"] = t.id;
            j["tau"] = e.tau;
            j["events"] = e.props;
            j["params"] = nlohmann::ordered_json::object();
            for (const auto& [k, v] : e.params) j["params"][k] = v;
            os << j.dump() << '\n';
        }
    }
}

std::string to_csv(const Trace& t, const std::vector<CsvColumn>& columns) {
    std::vector<CsvColumn> cols = columns;
    if (cols.empty()) {
        std::set<std::string> ps, qs;
        for (const TimedEvent& e : t.events) {
            ps.insert(e.props.begin(), e.props.end());
            for (const auto& [k, v] : e.params) qs.insert(k);
        }
        for (const auto& p : ps) cols.push_back({p, false});
        for (const auto& q : qs) cols.push_back({q, true});
    }

    std::ostringstream os;
    os << "timestamp";
    for (const auto& c : cols) os << ',' << c.name;
    os << '\n';
    for (const TimedEvent& e : t.events) {
        os << e.tau;
        for (const auto& c : cols) {
            if (c.is_param) {
                auto it = e.params.find(c.name);
                os << ',' << (it == e.params.end() ? "-" : format_number(it->second));
            } else {
                os << ',' << (e.has(c.name) ? 'T' : 'F');
            }
        }
        os << '\n';
    }
    return os.str();
}

void save_traces(const TraceSet& ts, const std::string& path, TraceFormat format,
                 const std::vector<CsvColumn>& columns) {
    if (format == TraceFormat::Jsonl) {
        std::ofstream out(path);
        if (!out) throw IoError("cannot write " + path);
        write_jsonl(ts, out);
        if (!out) throw IoError("write failed: " + path);
        return;
    }
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
    for (const Trace& t : ts) {
        const fs::path file = fs::path(path) / (t.id + ".csv");
        std::ofstream out(file);
        if (!out) throw IoError("cannot write " + file.string());
        out << to_csv(t, columns);
        if (!out) throw IoError("write failed: " + file.string());
    }
}

} // namespace qtwtl

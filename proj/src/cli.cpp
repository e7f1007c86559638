#include "qtwtl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtwtl/bench.hpp"
#include "qtwtl/errors.hpp"
#include "qtwtl/fuzz.hpp"
#include "qtwtl/monitor.hpp"
#include "qtwtl/parser.hpp"
#include "qtwtl/tracegen.hpp"
#include "qtwtl/trace_io.hpp"

namespace qtwtl {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << body;
    if (!out) throw IoError("write failed: " + path);
}

struct MonitorArgs {
    std::string formula;
    std::string formula_file;
    std::string traces;
    std::string format = "jsonl";
    std::string inconclusive = "false";
    std::string output;
    bool strict_within = false;
    bool include_silent_zeros = false;
    int jobs = 1;
};

int cmd_monitor(const MonitorArgs& a) {
    std::string text = a.formula;
    if (text.empty()) text = read_file(a.formula_file);
    const QualityPtr q = parse(text);
    const TraceSet ts = load_traces(a.traces, parse_trace_format(a.format));

    MonitorConfig cfg;
    cfg.strict_within = a.strict_within;
    cfg.inconclusive = parse_on_inconclusive(a.inconclusive);
    cfg.include_silent_zeros = a.include_silent_zeros;
    cfg.jobs = a.jobs;

    const MonitorReport rep = monitor(q, ts, cfg);
    const std::string json = rep.to_json();
    std::cout << json << "\n";
    if (!a.output.empty()) write_file(a.output, json + "\n");
    return rep.verdict ? 0 : 1;
}

struct GenArgs {
    std::string out;
    std::string format = "jsonl";
    std::size_t count = 1000;
    std::size_t events = 50;
    std::uint64_t seed = 1;
    std::string shape = "taxi";
    double ratio = 1.0;
    std::vector<int> wait, delay, trip_ok, trip_late;
    std::vector<double> fare, distance, rating, congestion;
};

template <typename T>
void apply_range(std::pair<T, T>& target, const std::vector<T>& v) {
    if (!v.empty()) target = {v[0], v[1]};
}

int cmd_gen(const GenArgs& a) {
    GenProfile p;
    if (a.shape == "taxi")
        p.shape = GenShape::Taxi;
    else if (a.shape == "pickup")
        p.shape = GenShape::PickupAnchored;
    else
        throw IoError("unknown shape `" + a.shape + "` (expected taxi or pickup)");
    p.satisfy_ratio = a.ratio;
    p.target_len = a.events;
    apply_range(p.wait, a.wait);
    apply_range(p.delay, a.delay);
    apply_range(p.trip_ok, a.trip_ok);
    apply_range(p.trip_late, a.trip_late);
    apply_range(p.fare, a.fare);
    apply_range(p.distance, a.distance);
    apply_range(p.rating, a.rating);
    apply_range(p.congestion, a.congestion);

    GenStats stats;
    const TraceSet ts = generate(a.count, a.seed, p, &stats);
    save_traces(ts, a.out, parse_trace_format(a.format),
                p.shape == GenShape::Taxi ? taxi_csv_columns() : std::vector<CsvColumn>{});
    std::cerr << "wrote " << ts.size() << " traces (" << stats.on_time << " on time, "
              << stats.late << " late) to " << a.out << "\n";
    return 0;
}

struct FuzzArgs {
    std::uint64_t seed = 1;
    std::size_t cases = 10000;
    int max_depth = 4;
    std::size_t max_events = 12;
    std::size_t max_traces = 5;
    std::string dump_dir;
};

int cmd_fuzz(const FuzzArgs& a) {
    FuzzConfig cfg;
    cfg.seed = a.seed;
    cfg.cases = a.cases;
    cfg.max_depth = a.max_depth;
    cfg.max_events = a.max_events;
    cfg.max_traces = a.max_traces;
    cfg.dump_dir = a.dump_dir;
    const FuzzReport rep = fuzz_differential(cfg);
    if (rep.clean()) {
        std::cout << rep.cases << " cases, no divergence\n";
        return 0;
    }
    std::cout << rep.cases << " cases, " << rep.divergences.size() << " divergences\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(rep.divergences.size(), 5); ++i) {
        const FuzzDivergence& d = rep.divergences[i];
        std::cout << "case " << d.case_index << " (" << d.kind << "): " << d.formula << "\n  "
                  << d.detail << "\n";
    }
    return 1;
}

struct BenchArgs {
    std::string out;
    BenchConfig cfg;
};

int cmd_bench(const BenchArgs& a) {
    const BenchReport rep = run_bench(a.cfg, &std::cerr);
    const std::string csv = rep.to_csv();
    std::cout << csv;
    if (!a.out.empty()) write_file(a.out, csv);
    std::cerr << "traces sweep: r2=" << rep.r2_traces << " ratio=" << rep.ratio_traces
              << "; events sweep: r2=" << rep.r2_events << " ratio=" << rep.ratio_events
              << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Quality-aware time-window monitoring over timed trace sets"};
    app.require_subcommand(1);

    MonitorArgs mon;
    CLI::App* cm = app.add_subcommand("monitor", "Evaluate a formula over a trace set");
    auto* fopt = cm->add_option("-f,--formula", mon.formula, "Formula text");
    cm->add_option("--formula-file", mon.formula_file, "Read the formula from a file")
        ->excludes(fopt);
    cm->add_option("--traces", mon.traces, "Trace file or directory")->required();
    cm->add_option("--format", mon.format, "Trace format: jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    cm->add_flag("--strict-within", mon.strict_within,
                 "Honor window lower bounds by delaying the first attempt");
    cm->add_option("--inconclusive", mon.inconclusive,
                   "Fold unresolved traces as: false, true or report")
        ->check(CLI::IsMember({"false", "true", "report"}));
    cm->add_flag("--include-silent-zeros", mon.include_silent_zeros,
                 "Project silent events as parameter value 0");
    cm->add_option("--jobs", mon.jobs, "Worker threads for per-trace evaluation")
        ->check(CLI::PositiveNumber);
    cm->add_option("-o,--output", mon.output, "Also write the JSON report here");

    GenArgs gen;
    CLI::App* cg = app.add_subcommand("gen", "Generate synthetic trip traces");
    cg->add_option("-o,--out", gen.out, "Output file (jsonl) or directory (csv)")->required();
    cg->add_option("--format", gen.format, "Trace format: jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    cg->add_option("-n,--n,--count", gen.count, "Number of traces");
    cg->add_option("--events", gen.events, "Events per trace");
    cg->add_option("--seed", gen.seed, "Generator seed");
    cg->add_option("--shape", gen.shape, "Trace shape: taxi or pickup")
        ->check(CLI::IsMember({"taxi", "pickup"}));
    cg->add_option("--ratio", gen.ratio, "Fraction of on-time trips")
        ->check(CLI::Range(0.0, 1.0));
    cg->add_option("--wait-range", gen.wait, "Wait duration range")->expected(2);
    cg->add_option("--delay-range", gen.delay, "Pickup delay range")->expected(2);
    cg->add_option("--trip-ok-range", gen.trip_ok, "On-time trip duration range")->expected(2);
    cg->add_option("--trip-late-range", gen.trip_late, "Late trip duration range")->expected(2);
    cg->add_option("--fare-range", gen.fare, "Fare range")->expected(2);
    cg->add_option("--distance-range", gen.distance, "Trip distance range")->expected(2);
    cg->add_option("--rating-range", gen.rating, "Trip rating range")->expected(2);
    cg->add_option("--congestion-range", gen.congestion, "Congestion charge range")
        ->expected(2);

    FuzzArgs fz;
    CLI::App* cf = app.add_subcommand("fuzz", "Differential-test the engine");
    cf->add_option("--cases", fz.cases, "Number of cases");
    cf->add_option("--seed", fz.seed, "Fuzzer seed");
    cf->add_option("--max-depth", fz.max_depth, "Maximum formula depth");
    cf->add_option("--max-len,--max-events", fz.max_events, "Maximum events per trace");
    cf->add_option("--max-traces", fz.max_traces, "Maximum traces per set");
    cf->add_option("--dump-dir", fz.dump_dir, "Write divergent cases here");

    BenchArgs bn;
    CLI::App* cb = app.add_subcommand("bench", "Run the scaling sweeps");
    cb->add_option("-o,--out", bn.out, "Also write the CSV here");
    cb->add_option("--trace-counts", bn.cfg.trace_counts, "Trace-count sweep points");
    cb->add_option("--events-per-trace", bn.cfg.events_per_trace,
                   "Trace length for the trace-count sweep");
    cb->add_option("--event-counts", bn.cfg.event_counts, "Trace-length sweep points");
    cb->add_option("--traces-for-events", bn.cfg.traces_for_events,
                   "Trace count for the trace-length sweep");
    cb->add_option("--formula", bn.cfg.formula, "Formula to time");
    cb->add_option("--repeat", bn.cfg.repeat, "Runs per point (best is kept)")
        ->check(CLI::PositiveNumber);
    cb->add_option("--seed", bn.cfg.seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cm->parsed()) {
            if (mon.formula.empty() && mon.formula_file.empty())
                throw IoError("one of --formula / --formula-file is required");
            return cmd_monitor(mon);
        }
        if (cg->parsed()) return cmd_gen(gen);
        if (cf->parsed()) return cmd_fuzz(fz);
        if (cb->parsed()) return cmd_bench(bn);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qtwtl

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtwtl/cli.hpp"
#include "qtwtl/trace_io.hpp"

using namespace qtwtl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() /
               ("qtwtl-cli-" + std::to_string(rd()) + "-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "qtwtl");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& s : args) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes a loadable JSONL file and a CSV directory") {
    TempDir dir;
    const std::string jsonl = dir.file("trips.jsonl");
    CHECK(run({"gen", "-o", jsonl, "-n", "12", "--events", "30", "--seed", "5"}) == 0);
    REQUIRE(fs::exists(jsonl));
    TraceSet ts = load_traces(jsonl, TraceFormat::Jsonl);
    CHECK(ts.size() == 12);
    for (const Trace& t : ts) CHECK(t.events.size() == 30);

    const std::string csvdir = dir.file("csv");
    CHECK(run({"gen", "-o", csvdir, "--format", "csv", "--count", "4", "--events", "25",
               "--shape", "pickup"}) == 0);
    REQUIRE(fs::is_directory(csvdir));
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(csvdir)) {
        CHECK(entry.path().extension() == ".csv");
        ++files;
    }
    CHECK(files == 4);
    CHECK(load_traces(csvdir, TraceFormat::Csv).size() == 4);
}

TEST_CASE("gen rejects out-of-range and malformed arguments") {
    TempDir dir;
    CHECK(run({"gen", "-o", dir.file("x.jsonl"), "--ratio", "1.5"}) == 2);
    CHECK(run({"gen", "-o", dir.file("x.jsonl"), "--shape", "bus"}) == 2);
    CHECK(run({"gen", "-o", dir.file("x.jsonl"), "--wait-range", "3"}) == 2);
    CHECK(run({"gen"}) == 2); // --out is required
}

TEST_CASE("monitor exit codes distinguish verdicts from usage errors") {
    TempDir dir;
    const std::string traces = dir.file("trips.jsonl");
    REQUIRE(run({"gen", "-o", traces, "-n", "10", "--events", "30", "--seed", "2"}) == 0);

    CHECK(run({"monitor", "-f", "A_max(trip_distance) < 100", "--traces", traces}) == 0);
    CHECK(run({"monitor", "-f", "A_max(trip_distance) < 0.1", "--traces", traces}) == 1);

    // An empty trace directory is a false verdict (exit 1), not a usage error.
    const std::string empty = dir.file("empty");
    fs::create_directories(empty);
    CHECK(run({"monitor", "-f", "true", "--traces", empty}) == 1);

    // Usage problems exit 2 regardless of any would-be verdict.
    CHECK(run({"monitor", "--traces", traces}) == 2);                  // no formula
    CHECK(run({"monitor", "-f", "A_max(", "--traces", traces}) == 2);  // syntax error
    CHECK(run({"monitor", "-f", "true", "--traces", dir.file("missing.jsonl")}) == 2);
    CHECK(run({"monitor", "-f", "true", "--traces", traces, "--format", "xml"}) == 2);
    CHECK(run({"monitor", "-f", "true", "--traces", traces, "--inconclusive", "maybe"}) == 2);
    CHECK(run({"monitor", "-f", "true", "--traces", traces, "--jobs", "0"}) == 2);
    CHECK(run({"monitor", "-f", "true", "--traces", traces, "--no-such-flag"}) == 2);
    CHECK(run({"weigh"}) == 2); // unknown subcommand
}

TEST_CASE("monitor reads formulas from files and mirrors the report to disk") {
    TempDir dir;
    const std::string traces = dir.file("trips.jsonl");
    REQUIRE(run({"gen", "-o", traces, "-n", "6", "--events", "30"}) == 0);

    const std::string ffile = dir.file("formula.txt");
    {
        std::ofstream out(ffile);
        out << "C([H^1 req_taxi][0,0]) >= 1\n";
    }
    const std::string report = dir.file("report.json");
    CHECK(run({"monitor", "--formula-file", ffile, "--traces", traces, "-o", report}) == 0);

    REQUIRE(fs::exists(report));
    std::ifstream in(report);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("verdict").get<bool>());
    CHECK(j.at("operators").is_array());
    CHECK(j.contains("wall_ms"));

    // The two formula sources are mutually exclusive.
    CHECK(run({"monitor", "-f", "true", "--formula-file", ffile, "--traces", traces}) == 2);
}

TEST_CASE("a short differential fuzz run exits clean") {
    CHECK(run({"fuzz", "--cases", "60", "--seed", "3", "--max-depth", "3", "--max-len",
               "8"}) == 0);
}

TEST_CASE("bench writes the sweep CSV") {
    TempDir dir;
    const std::string csv = dir.file("bench.csv");
    CHECK(run({"bench", "-o", csv, "--trace-counts", "20", "40", "--events-per-trace", "20",
               "--event-counts", "20", "30", "--traces-for-events", "4", "--repeat", "1"}) ==
          0);
    REQUIRE(fs::exists(csv));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "sweep,value,formula,wall_ms,peak_mem_bytes,r2");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}

} // TEST_SUITE

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "qtwtl/trace.hpp"
#include "qtwtl/trace_io.hpp"

using namespace qtwtl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() /
               ("qtwtl-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

TraceSet sample_set() {
    Trace a;
    a.id = "a";
    a.events.push_back(make_event(0, {"req"}));
    a.events.push_back(make_event(3, {"drop"}, {{"fare", 8.0}, {"dist", 2.7}}));
    a.events.push_back(silent_event(6)); // trailing silence pins the horizon

    Trace b;
    b.id = "b";
    b.events.push_back(make_event(1, {"req", "vip"}, {{"fare", 12.5}}));
    b.events.push_back(make_event(2, {"drop"}));

    return preprocess(TraceSet{a, b});
}

} // namespace

TEST_SUITE("trace_io") {

TEST_CASE("format names parse") {
    CHECK(parse_trace_format("jsonl") == TraceFormat::Jsonl);
    CHECK(parse_trace_format("csv") == TraceFormat::Csv);
    CHECK_THROWS_AS(parse_trace_format("xml"), IoError);
}

TEST_CASE("jsonl survives a save/load round trip, horizon included") {
    TempDir tmp;
    const std::string file = (tmp.path / "set.jsonl").string();
    TraceSet ts = sample_set();
    save_traces(ts, file, TraceFormat::Jsonl);
    TraceSet back = load_traces(file, TraceFormat::Jsonl);
    REQUIRE(back.size() == ts.size());
    CHECK(back[0] == ts[0]); // trailing silent horizon reconstructed
    CHECK(back[1] == ts[1]);
}

TEST_CASE("jsonl writer skips interior silence") {
    std::ostringstream os;
    write_jsonl(sample_set(), os);
    std::istringstream is(os.str());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(is, line)) ++lines;
    // Trace a: events at 0 and 3 plus one horizon line; trace b: 1 and 2.
    CHECK(lines == 5);
    CHECK(os.str().find("\"tau\":6") != std::string::npos);
}

TEST_CASE("csv survives a save/load round trip") {
    TempDir tmp;
    TraceSet ts = sample_set();
    save_traces(ts, tmp.path.string(), TraceFormat::Csv);
    CHECK(fs::exists(tmp.path / "a.csv"));
    CHECK(fs::exists(tmp.path / "b.csv"));
    TraceSet back = load_traces(tmp.path.string(), TraceFormat::Csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == ts[0]);
    CHECK(back[1] == ts[1]);
}

TEST_CASE("csv renders T/F propositions and dashed absent parameters") {
    Trace t;
    t.id = "t";
    t.events.push_back(make_event(0, {"p"}));
    t.events.push_back(make_event(2, {"q"}, {{"h", 1.5}}));
    t = preprocess(t);

    std::string csv = to_csv(t, {{"p", false}, {"q", false}, {"h", true}});
    CHECK(csv ==
          "timestamp,p,q,h\n"
          "0,T,F,-\n"
          "1,F,F,-\n"
          "2,F,T,1.5\n");

    // Without an explicit schema, columns are collected and sorted.
    CHECK(to_csv(t) ==
          "timestamp,p,q,h\n"
          "0,T,F,-\n"
          "1,F,F,-\n"
          "2,F,T,1.5\n");
}

TEST_CASE("a directory of jsonl files loads in file order") {
    TempDir tmp;
    {
        std::ofstream f1(tmp.path / "01.jsonl");
        f1 << R"({"trace":"z","tau":0,"events":["a"],"params":{}})" << "\n";
        std::ofstream f2(tmp.path / "02.jsonl");
        f2 << R"({"trace":"y","tau":0,"events":["b"],"params":{}})" << "\n";
        std::ofstream noise(tmp.path / "readme.txt");
        noise << "not a trace\n";
    }
    TraceSet ts = load_traces(tmp.path.string(), TraceFormat::Jsonl);
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].id == "z"); // file order wins over id order across files
    CHECK(ts[1].id == "y");
}

TEST_CASE("interleaved jsonl lines regroup by trace id") {
    TempDir tmp;
    const fs::path file = tmp.path / "mix.jsonl";
    {
        std::ofstream f(file);
        f << R"({"trace":"a","tau":0,"events":["p"],"params":{}})" << "\n";
        f << R"({"trace":"b","tau":0,"events":["q"],"params":{}})" << "\n";
        f << R"({"trace":"a","tau":2,"events":[],"params":{"h":4}})" << "\n";
    }
    TraceSet ts = load_traces(file.string(), TraceFormat::Jsonl);
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].id == "a");
    REQUIRE(ts[0].events.size() == 3);
    CHECK(ts[0].events[1].silent);
    CHECK(ts[0].events[2].params.at("h") == 4);
    CHECK(ts[1].id == "b");
}

TEST_CASE("jsonl format errors carry the offending line number") {
    TempDir tmp;
    const fs::path file = tmp.path / "bad.jsonl";

    auto expect_line = [&](const std::string& body, long line) {
        {
            std::ofstream f(file);
            f << body;
        }
        try {
            load_traces(file.string(), TraceFormat::Jsonl);
            FAIL_CHECK("expected FormatError for: " << body);
        } catch (const FormatError& e) {
            CHECK(e.line == line);
        }
    };

    expect_line(R"({"trace":"a","tau":0,"events":[],"params":{}})"
                "\nnot json\n",
                2);
    expect_line(R"({"trace":"a","events":[],"params":{}})" "\n", 1); // no tau
    expect_line(R"({"trace":"a","tau":0,"events":["bad name"],"params":{}})" "\n", 1);
    expect_line(R"({"trace":"a","tau":0,"events":[],"params":{"h":"x"}})" "\n", 1);
}

TEST_CASE("non-monotone stamps surface from loading") {
    TempDir tmp;
    const fs::path file = tmp.path / "nm.jsonl";
    {
        std::ofstream f(file);
        f << R"({"trace":"a","tau":5,"events":["p"],"params":{}})" << "\n";
        f << R"({"trace":"a","tau":3,"events":["q"],"params":{}})" << "\n";
    }
    CHECK_THROWS_AS(load_traces(file.string(), TraceFormat::Jsonl), NonMonotonicTrace);
}

TEST_CASE("repeated stamps for one trace merge instead of erroring") {
    TempDir tmp;
    const fs::path file = tmp.path / "dup.jsonl";
    {
        std::ofstream f(file);
        f << R"({"trace":"a","tau":1,"events":["p"],"params":{"x":1}})" << "\n";
        f << R"({"trace":"a","tau":1,"events":["q"],"params":{"y":2}})" << "\n";
    }
    TraceSet ts = load_traces(file.string(), TraceFormat::Jsonl);
    REQUIRE(ts.size() == 1);
    REQUIRE(ts[0].events.size() == 2); // silent filler at 0, merged event at 1
    const TimedEvent& e = ts[0].events[1];
    CHECK(e.props == std::vector<std::string>{"p", "q"});
    CHECK(e.params.at("x") == 1);
    CHECK(e.params.at("y") == 2);
}

TEST_CASE("missing paths are io errors") {
    CHECK_THROWS_AS(load_traces("/nonexistent/path/set.jsonl", TraceFormat::Jsonl),
                    IoError);
}

TEST_CASE("a directory without matching files is an empty set, not an error") {
    TempDir dir;
    CHECK(load_traces(dir.path.string(), TraceFormat::Jsonl).empty());
    // Files of the other format do not count either.
    save_traces(sample_set(), (dir.path / "set.jsonl").string(), TraceFormat::Jsonl);
    CHECK(load_traces(dir.path.string(), TraceFormat::Csv).empty());
    CHECK(load_traces(dir.path.string(), TraceFormat::Jsonl).size() == 2);
}

} // TEST_SUITE

#include <doctest.h>

#include <sstream>
#include <string>

#include "qtwtl/errors.hpp"
#include "qtwtl/trace_io.hpp"
#include "qtwtl/tracegen.hpp"

using namespace qtwtl;

namespace {

const char* const kGoldenTripCsv =
    "timestamp,req_taxi,wait_time,arrival_loc,pickup_delay,pick_up,drop_loc,"
    "fare_amount,trip_distance,rate_trip,cong_charge\n"
    "0,T,-,F,-,F,F,-,-,-,-\n"
    "1,F,-,F,-,F,F,-,-,-,-\n"
    "2,F,2,T,-,F,F,-,-,-,-\n"
    "3,F,-,F,-,F,F,-,-,-,-\n"
    "4,F,-,F,2,T,F,-,-,-,-\n"
    "5,F,-,F,-,F,F,-,-,-,-\n"
    "6,F,-,F,-,F,F,-,-,-,-\n"
    "7,F,-,F,-,F,F,-,-,-,-\n"
    "8,F,-,F,-,F,F,-,-,-,-\n"
    "9,F,-,F,-,F,F,-,-,-,-\n"
    "10,F,-,F,-,F,T,8,2.7,3,2.5\n";

TripRecord worked_row() {
    TripRecord r;
    r.taxi_request_time = 0;
    r.arrival_time = 2;
    r.pickup_time = 4;
    r.dropoff_time = 10;
    r.fare_amount = 8;
    r.trip_distance = 2.7;
    r.trip_rating = 3;
    r.cong_charge = 2.5;
    return r;
}

} // namespace

TEST_SUITE("tracegen") {

TEST_CASE("the worked trip record expands to the reference CSV bit for bit") {
    Trace t = record_to_trace(worked_row());
    REQUIRE(t.events.size() == 11);
    CHECK(t.events[0].has("req_taxi"));
    CHECK(t.events[2].has("arrival_loc"));
    CHECK(t.events[2].params.at("wait_time") == 2);
    CHECK(t.events[4].has("pick_up"));
    CHECK(t.events[4].params.at("pickup_delay") == 2);
    CHECK(t.events[10].has("drop_loc"));
    CHECK(t.events[10].params.at("fare_amount") == 8);
    CHECK(t.events[10].params.at("trip_distance") == 2.7);
    CHECK(t.events[10].params.at("rate_trip") == 3);
    CHECK(t.events[10].params.at("cong_charge") == 2.5);
    for (std::size_t z : {1, 3, 5, 6, 7, 8, 9})
        CHECK(t.events[z].silent);

    CHECK(to_csv(t, taxi_csv_columns()) == kGoldenTripCsv);
    CHECK(example_taxi_trace().events == t.events);
}

TEST_CASE("a minimal trip squeezes into four stamps") {
    TripRecord r;
    r.arrival_time = 1;
    r.pickup_time = 2;
    r.dropoff_time = 3;
    Trace t = record_to_trace(r);
    REQUIRE(t.events.size() == 4);
    CHECK(t.events[0].has("req_taxi"));
    CHECK(t.events[1].has("arrival_loc"));
    CHECK(t.events[2].has("pick_up"));
    CHECK(t.events[3].has("drop_loc"));
}

TEST_CASE("trip records outside the invariants are rejected") {
    TripRecord r = worked_row();
    r.arrival_time = 11; // wait 11 > 10
    CHECK_THROWS_AS(record_to_trace(r), InvariantViolation);

    r = worked_row();
    r.arrival_time = 0; // wait 0 < 1
    CHECK_THROWS_AS(record_to_trace(r), InvariantViolation);

    r = worked_row();
    r.pickup_time = 6; // delay 4 > 3
    CHECK_THROWS_AS(record_to_trace(r), InvariantViolation);

    r = worked_row();
    r.dropoff_time = r.pickup_time; // no trip
    CHECK_THROWS_AS(record_to_trace(r), InvariantViolation);
}

TEST_CASE("generation is deterministic, byte for byte") {
    GenProfile p;
    p.satisfy_ratio = 0.7;
    p.target_len = 60; // long enough for the late-trip tail to fit the horizon
    TraceSet a = generate(40, 11, p);
    TraceSet b = generate(40, 11, p);
    REQUIRE(a.size() == 40);
    CHECK(a == b);

    std::ostringstream ja, jb;
    write_jsonl(a, ja);
    write_jsonl(b, jb);
    CHECK(ja.str() == jb.str());

    TraceSet c = generate(40, 12, p);
    CHECK(a != c);
}

TEST_CASE("every generated trace spans exactly the target horizon") {
    GenProfile p;
    p.target_len = 50;
    GenStats st;
    TraceSet ts = generate(25, 5, p, &st);
    for (const Trace& t : ts) {
        CHECK(t.events.size() == 50);
        CHECK(t.events[0].has("req_taxi"));
    }
    CHECK(st.count == 25);
}

TEST_CASE("the planted on-time counts are exact for any ratio") {
    GenProfile p;
    for (double ratio : {0.0, 0.25, 0.8, 0.9, 1.0}) {
        p.satisfy_ratio = ratio;
        GenStats st;
        generate(200, 7, p, &st);
        CHECK(st.on_time == static_cast<std::size_t>(ratio * 200 + 0.5));
        CHECK(st.on_time + st.late == 200);
        CHECK(st.on_time_fraction() == doctest::Approx(ratio));
    }
}

TEST_CASE("drawn values respect the profile bounds") {
    GenProfile p;
    p.satisfy_ratio = 0.5;
    GenStats st;
    generate(300, 9, p, &st);
    CHECK(st.min_wait >= 1);
    CHECK(st.max_wait <= 10);
    CHECK(st.min_fare >= 3.0);
    CHECK(st.max_fare <= 9.5);
    CHECK(st.min_distance >= 0.5);
    CHECK(st.max_distance <= 30.0);
    CHECK(st.min_rating >= 4.0);
    CHECK(st.max_rating <= 5.0);
    CHECK(st.min_congestion >= 0.0);
    CHECK(st.max_congestion <= 1.5);
}

TEST_CASE("the pickup-anchored shape starts at the pickup") {
    GenProfile p;
    p.shape = GenShape::PickupAnchored;
    p.target_len = 50;
    TraceSet ts = generate(10, 3, p);
    for (const Trace& t : ts) {
        CHECK(t.events[0].has("pick_up"));
        CHECK(t.events.size() == 50);
        bool dropped = false;
        for (const auto& e : t.events) {
            if (e.has("drop_off")) {
                dropped = true;
                CHECK(e.params.count("trip_rating") == 1);
            }
        }
        CHECK(dropped);
    }
}

TEST_CASE("profiles that cannot fit a trip are rejected up front") {
    GenProfile p;
    p.target_len = 10; // worst case 10 + 3 + 4 > 9
    CHECK_THROWS_AS(generate(5, 1, p), SemanticError);

    GenProfile q;
    q.target_len = 0;
    CHECK_THROWS_AS(generate(5, 1, q), SemanticError);
}

} // TEST_SUITE

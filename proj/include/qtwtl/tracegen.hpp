// Synthetic taxi-trip trace generation with planted verdicts.
//
// Every trace describes one trip. The `Taxi` shape emits the full event
// chain (request at 0, arrival after the wait, pickup after the delay,
// drop-off after the trip) with the fare parameters on the drop-off event;
// the `PickupAnchored` shape starts directly at the pickup so formulas
// anchored on `pick_up` see it on the first event. `satisfy_ratio` controls
// exactly how many trips finish on time (trip duration within `trip_ok`)
// versus late (`trip_late`): late trips are spread evenly and the counts
// are exact, so the satisfying fraction of a generated set is known by
// construction. Each trace is derived from its own deterministically-seeded
// generator, making any prefix of a set reproducible.
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "qtwtl/trace.hpp"
#include "qtwtl/trace_io.hpp"

namespace qtwtl {

std::uint64_t splitmix64(std::uint64_t x);

// One taxi trip as absolute minute marks plus the fare columns. The derived
// spans are what the trace timeline is built from: the request is pinned to
// time 0 and every later proposition lands wait/delay/duration minutes on.
struct TripRecord {
    int taxi_request_time = 0;
    int arrival_time = 0;
    int pickup_time = 0;
    int dropoff_time = 0;
    double fare_amount = 0.0;
    double trip_distance = 0.0;
    double trip_rating = 0.0;
    double cong_charge = 0.0;

    int wait_time() const { return arrival_time - taxi_request_time; }
    int pickup_delay() const { return pickup_time - arrival_time; }
    int trip_duration() const { return dropoff_time - pickup_time; }
};

// Expands a trip record into its preprocessed trace: req_taxi at 0,
// arrival_loc at wait_time (carrying wait_time), pick_up at
// wait_time+pickup_delay (carrying pickup_delay), drop_loc at the drop
// minute carrying fare_amount/trip_distance/rate_trip/cong_charge, silent
// rows in every gap. Throws InvariantViolation when the spans fall outside
// wait 1..10, delay 1..3, or the drop-off does not follow the pickup.
Trace record_to_trace(const TripRecord& r);

enum class GenShape { Taxi, PickupAnchored };

struct GenProfile {
    GenShape shape = GenShape::Taxi;
    double satisfy_ratio = 1.0; // fraction of on-time trips, exact
    std::size_t target_len = 50; // events per trace incl. silent padding

    std::pair<int, int> wait{1, 10};      // request -> arrival
    std::pair<int, int> delay{1, 3};      // arrival -> pickup
    std::pair<int, int> trip_ok{4, 35};   // pickup -> drop-off, on time
    std::pair<int, int> trip_late{36, 45};

    std::pair<double, double> fare{3.0, 9.5};
    std::pair<double, double> distance{0.5, 30.0};
    std::pair<double, double> rating{4.0, 5.0};
    std::pair<double, double> congestion{0.0, 1.5};
};

// Extremes of the values actually drawn; enough to decide any bound that
// the whole range clears (or the whole range breaks).
struct GenStats {
    std::size_t count = 0;
    std::size_t on_time = 0;
    std::size_t late = 0;
    double min_wait = 0, max_wait = 0;
    double min_fare = 0, max_fare = 0;
    double min_distance = 0, max_distance = 0;
    double min_rating = 0, max_rating = 0;
    double min_congestion = 0, max_congestion = 0;

    double on_time_fraction() const {
        return count == 0 ? 0.0 : static_cast<double>(on_time) / static_cast<double>(count);
    }
};

TraceSet generate(std::size_t n, std::uint64_t seed, const GenProfile& profile = {},
                  GenStats* stats = nullptr);

// Column order used by the generated CSV files.
std::vector<CsvColumn> taxi_csv_columns();

// A fixed 11-event reference trip (wait 2, delay 2, trip 6) used by tests
// and documentation.
Trace example_taxi_trace();

} // namespace qtwtl

#include "qtwtl/tracegen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qtwtl/errors.hpp"

namespace qtwtl {
namespace {

int draw_int(std::mt19937_64& rng, std::pair<int, int> range) {
    return std::uniform_int_distribution<int>(range.first, range.second)(rng);
}

double draw_real(std::mt19937_64& rng, std::pair<double, double> range) {
    return std::uniform_real_distribution<double>(range.first, range.second)(rng);
}

void fold_minmax(double v, double& lo, double& hi, bool first) {
    if (first) {
        lo = hi = v;
        return;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
}

void validate(const GenProfile& p, bool has_late, bool has_on_time) {
    const auto check = [&](std::pair<int, int> r, const char* name) {
        if (r.first < 0 || r.second < r.first)
            throw SemanticError(std::string("bad ") + name + " range");
    };
    check(p.wait, "wait");
    check(p.delay, "delay");
    check(p.trip_ok, "trip_ok");
    check(p.trip_late, "trip_late");
    if (p.target_len == 0) throw SemanticError("target_len must be positive");
    // The drop-off must fit before the horizon for the worst-case draw.
    const int horizon = static_cast<int>(p.target_len) - 1;
    int lead = 0;
    if (p.shape == GenShape::Taxi) lead = p.wait.second + p.delay.second;
    if (has_on_time && lead + p.trip_ok.first > horizon)
        throw SemanticError("target_len too small for on-time trips");
    if (has_late && lead + p.trip_late.first > horizon)
        throw SemanticError("target_len too small for late trips");
}

} // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Trace record_to_trace(const TripRecord& r) {
    const int wait = r.wait_time();
    const int delay = r.pickup_delay();
    const int trip = r.trip_duration();
    if (wait < 1 || wait > 10)
        throw InvariantViolation("wait_time " + std::to_string(wait) + " outside [1,10]");
    if (delay < 1 || delay > 3)
        throw InvariantViolation("pickup_delay " + std::to_string(delay) + " outside [1,3]");
    if (trip < 1)
        throw InvariantViolation("drop-off does not follow the pickup");

    Trace t;
    t.id = "trip";
    t.events.push_back(make_event(0, {"req_taxi"}, {}));
    t.events.push_back(make_event(wait, {"arrival_loc"}, {{"wait_time", double(wait)}}));
    t.events.push_back(
        make_event(wait + delay, {"pick_up"}, {{"pickup_delay", double(delay)}}));
    t.events.push_back(make_event(wait + delay + trip, {"drop_loc"},
                                  {{"fare_amount", r.fare_amount},
                                   {"trip_distance", r.trip_distance},
                                   {"rate_trip", r.trip_rating},
                                   {"cong_charge", r.cong_charge}}));
    return preprocess(t);
}

TraceSet generate(std::size_t n, std::uint64_t seed, const GenProfile& p, GenStats* stats) {
    double ratio = std::clamp(p.satisfy_ratio, 0.0, 1.0);
    const std::size_t n_sat = static_cast<std::size_t>(
        std::llround(ratio * static_cast<double>(n)));
    const std::size_t n_late = n - n_sat;
    validate(p, n_late > 0, n_sat > 0);

    GenStats st;
    TraceSet out;
    out.reserve(n);
    const int horizon = static_cast<int>(p.target_len) - 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::mt19937_64 rng(splitmix64(seed + i));
        // Evenly spaced late trips give exact counts for every prefix.
        const bool late = (i + 1) * n_late / n > i * n_late / n;

        const int wait = draw_int(rng, p.wait);
        const int delay = draw_int(rng, p.delay);
        const int lead = p.shape == GenShape::Taxi ? wait + delay : 0;
        std::pair<int, int> trip_range = late ? p.trip_late : p.trip_ok;
        trip_range.second = std::min(trip_range.second, horizon - lead);
        const int trip = draw_int(rng, trip_range);
        const double fare = draw_real(rng, p.fare);
        const double distance = draw_real(rng, p.distance);
        const double rating = draw_real(rng, p.rating);
        const double congestion = draw_real(rng, p.congestion);

        Trace t;
        if (p.shape == GenShape::Taxi) {
            TripRecord r;
            r.taxi_request_time = 0;
            r.arrival_time = wait;
            r.pickup_time = wait + delay;
            r.dropoff_time = wait + delay + trip;
            r.fare_amount = fare;
            r.trip_distance = distance;
            r.trip_rating = rating;
            r.cong_charge = congestion;
            t = record_to_trace(r);
        } else {
            t.events.push_back(make_event(0, {"pick_up"}, {}));
            t.events.push_back(make_event(trip, {"drop_off"}, {{"trip_rating", rating}}));
        }
        t.id = "trace" + std::to_string(i);
        if (t.events.back().tau < horizon) {
            t.events.push_back(silent_event(horizon));
            t = preprocess(t);
        } else if (p.shape != GenShape::Taxi) {
            t = preprocess(t);
        }
        out.push_back(t);

        const bool first = st.count == 0;
        ++st.count;
        late ? ++st.late : ++st.on_time;
        fold_minmax(double(wait), st.min_wait, st.max_wait, first);
        fold_minmax(fare, st.min_fare, st.max_fare, first);
        fold_minmax(distance, st.min_distance, st.max_distance, first);
        fold_minmax(rating, st.min_rating, st.max_rating, first);
        fold_minmax(congestion, st.min_congestion, st.max_congestion, first);
    }
    if (stats) *stats = st;
    return out;
}

std::vector<CsvColumn> taxi_csv_columns() {
    return {{"req_taxi", false},    {"wait_time", true},   {"arrival_loc", false},
            {"pickup_delay", true}, {"pick_up", false},    {"drop_loc", false},
            {"fare_amount", true},  {"trip_distance", true}, {"rate_trip", true},
            {"cong_charge", true}};
}

Trace example_taxi_trace() {
    TripRecord r;
    r.taxi_request_time = 0;
    r.arrival_time = 2;
    r.pickup_time = 4;
    r.dropoff_time = 10;
    r.fare_amount = 8.0;
    r.trip_distance = 2.7;
    r.trip_rating = 3.0;
    r.cong_charge = 2.5;
    Trace t = record_to_trace(r);
    t.id = "example";
    return t;
}

} // namespace qtwtl

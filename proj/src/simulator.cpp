#include "uavloc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "uavloc/errors.hpp"
#include "uavloc/rng.hpp"

namespace uavloc {

double NoiseProfile::offset_for(MessageFormat format) const {
    const auto it = per_format_offset_db.find(format);
    return it == per_format_offset_db.end() ? 0.0 : it->second;
}

double sigma_at(const NoiseProfile& profile, double distance_m) {
    const auto& anchors = profile.anchors;
    if (anchors.empty()) return 0.0;
    if (!(distance_m > anchors.front().distance_m)) return anchors.front().std_dev_db;
    if (distance_m >= anchors.back().distance_m) return anchors.back().std_dev_db;
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        const auto& lo = anchors[i];
        const auto& hi = anchors[i + 1];
        if (distance_m <= hi.distance_m) {
            const double t = (distance_m - lo.distance_m) / (hi.distance_m - lo.distance_m);
            return lo.std_dev_db + t * (hi.std_dev_db - lo.std_dev_db);
        }
    }
    return anchors.back().std_dev_db;
}

namespace {

void fail(const std::string& what) {
    throw Error(ErrorCode::InvalidScenario, what);
}

bool finite_position(const Position3D& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace

void Scenario::validate() const {
    if (stations.empty()) fail("scenario has no ground stations");
    std::set<std::string> ids;
    for (const auto& st : stations) {
        if (st.id.empty()) fail("ground station with empty id");
        if (!ids.insert(st.id).second) fail("duplicate ground station id '" + st.id + "'");
        if (!finite_position(st.position)) fail("station '" + st.id + "' has non-finite position");
        if (st.position.z < 0.0) fail("station '" + st.id + "' is below ground (z < 0)");
        if (!std::isfinite(st.bias_db)) fail("station '" + st.id + "' has non-finite bias");
    }
    if (waypoints.empty()) fail("scenario has no waypoints");
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
        const auto& wp = waypoints[i];
        std::ostringstream where;
        where << "waypoint " << i;
        if (!finite_position(wp.position)) fail(where.str() + " has a non-finite position");
        if (wp.position.z < 0.0) fail(where.str() + " is below ground (z < 0)");
        if (!(wp.dwell_s > 0.0) || !std::isfinite(wp.dwell_s)) {
            fail(where.str() + " needs a positive dwell time");
        }
        for (const auto& st : stations) {
            if (euclidean_distance(st.position, wp.position) <= 0.0) {
                fail(where.str() + " coincides with station '" + st.id + "'");
            }
        }
    }
    if (!(truth_model.L > 0.0)) fail("truth model needs a positive path-loss exponent");
    if (!std::isfinite(truth_model.C)) fail("truth model intercept is not finite");
    schedule.validate();
    if (!(loss_probability >= 0.0 && loss_probability < 1.0)) {
        fail("loss probability must be in [0, 1)");
    }
    if (!is_valid_uav_id(uav_id.id)) fail("invalid UAV id");
    if (noise.anchors.empty()) fail("noise profile needs at least one anchor");
    for (std::size_t i = 0; i < noise.anchors.size(); ++i) {
        const auto& a = noise.anchors[i];
        if (!(a.distance_m > 0.0) || !std::isfinite(a.distance_m)) {
            fail("noise anchor distances must be positive");
        }
        if (!(a.std_dev_db >= 0.0) || !std::isfinite(a.std_dev_db)) {
            fail("noise anchor std devs must be >= 0");
        }
        if (i > 0 && !(a.distance_m > noise.anchors[i - 1].distance_m)) {
            fail("noise anchor distances must be strictly increasing");
        }
    }
    for (const auto& [format, offset] : noise.per_format_offset_db) {
        (void)format;
        if (!std::isfinite(offset)) fail("per-format RSSI offsets must be finite");
    }
}

bool Scenario::waypoint_usable(std::size_t index) const {
    return index < waypoints.size() &&
           waypoints[index].dwell_s >= schedule.min_dwell_s();
}

std::vector<StationStream> simulate(const Scenario& scenario) {
    scenario.validate();

    // Emission instants are shared by all stations: the UAV broadcasts, every
    // station listens. First broadcast of a dwell comes one full interval
    // after arrival, so a dwell of d yields floor(d / interval) emissions.
    struct Emission {
        double time_s;
        const Position3D* uav;
    };
    std::vector<Emission> emissions;
    double dwell_start = 0.0;
    for (const auto& wp : scenario.waypoints) {
        const auto count =
            static_cast<std::uint64_t>(std::floor(wp.dwell_s / scenario.schedule.interval_s));
        for (std::uint64_t k = 1; k <= count; ++k) {
            emissions.push_back(
                {dwell_start + static_cast<double>(k) * scenario.schedule.interval_s,
                 &wp.position});
        }
        dwell_start += wp.dwell_s;
    }

    const double format_offset = scenario.noise.offset_for(scenario.message_format);

    std::vector<StationStream> streams;
    streams.reserve(scenario.stations.size());
    for (const auto& station : scenario.stations) {
        const std::uint64_t station_hash = fnv1a64(station.id);
        StationStream stream;
        stream.station_id = station.id;
        stream.samples.reserve(emissions.size());
        for (std::size_t index = 0; index < emissions.size(); ++index) {
            SplitMix64 rng(stream_seed(scenario.seed, station_hash, index));
            // Fixed draw order per emission keeps streams identical when only
            // the loss probability changes.
            const double loss_draw = rng.next_unit();
            const double noise_draw = rng.next_gaussian();
            if (loss_draw < scenario.loss_probability) continue;

            const double distance =
                euclidean_distance(station.position, *emissions[index].uav);
            const double sigma = sigma_at(scenario.noise, distance);
            EmittedSample emitted;
            emitted.sample.station_id = station.id;
            emitted.sample.uav_id = scenario.uav_id.id;
            emitted.sample.timestamp_s = emissions[index].time_s;
            emitted.sample.rssi_db = predict_rssi(scenario.truth_model, distance) +
                                     format_offset + station.bias_db + sigma * noise_draw;
            emitted.truth_distance_m = distance;
            stream.samples.push_back(std::move(emitted));
        }
        streams.push_back(std::move(stream));
    }
    return streams;
}

}  // namespace uavloc

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uavloc/geometry.hpp"
#include "uavloc/pathloss.hpp"
#include "uavloc/remote_id.hpp"

namespace uavloc {

/// Measurement-noise standard deviation at a given slant distance.
struct NoiseAnchor {
    double distance_m = 0.0;
    double std_dev_db = 0.0;
};

/// Distance-dependent Gaussian noise plus an optional per-format RSSI offset
/// (longer messages measure stronger; the magnitude is deployment-specific,
/// so the default is 0).
struct NoiseProfile {
    std::vector<NoiseAnchor> anchors;  // strictly increasing distances
    std::map<MessageFormat, double> per_format_offset_db;

    double offset_for(MessageFormat format) const;
};

/// Noise level at a distance: piecewise-linear between anchors, clamped to
/// the end anchors outside their range.
double sigma_at(const NoiseProfile& profile, double distance_m);

struct GroundStation {
    std::string id;
    Position3D position;
    double bias_db = 0.0;  // constant receiver offset (battery, antenna, cabling)
};

struct Waypoint {
    Position3D position;
    double dwell_s = 0.0;  // how long the UAV holds still here
};

/// Declarative simulation input. Deterministic: the seed fixes every sample.
struct Scenario {
    std::vector<GroundStation> stations;
    std::vector<Waypoint> waypoints;
    PathLossModel truth_model;
    NoiseProfile noise;
    BroadcastSchedule schedule;
    double loss_probability = 0.0;  // [0, 1)
    std::uint64_t seed = 0;
    UavId uav_id;
    MessageFormat message_format = MessageFormat::M3;

    /// Throws InvalidScenario with a description of the first problem found.
    void validate() const;

    /// A waypoint yields a distance estimate only if the UAV dwells long
    /// enough for one full averaging window.
    bool waypoint_usable(std::size_t index) const;
};

/// A simulated reading plus the true slant distance it was generated from.
/// The truth channel exists for testing; nothing downstream consumes it.
struct EmittedSample {
    RssiSample sample;
    double truth_distance_m = 0.0;
};

struct StationStream {
    std::string station_id;
    std::vector<EmittedSample> samples;  // ordered by timestamp
};

/// Synthesizes every station's sample stream. Broadcasts happen every
/// interval_s during each dwell; each one is independently lost with
/// loss_probability, and received RSSI is the truth-model prediction plus
/// format offset, station bias and Gaussian noise scaled by sigma_at.
/// Output order matches scenario.stations.
std::vector<StationStream> simulate(const Scenario& scenario);

/// Reads a scenario from a JSON document (schema documented in the README).
/// Throws FileError on unreadable files or bad JSON, InvalidScenario when the
/// document parses but describes an invalid scenario.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_json(const std::string& json_text);

}  // namespace uavloc

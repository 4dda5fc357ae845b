#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "uavloc/errors.hpp"
#include "uavloc/simulator.hpp"

namespace uavloc {

namespace {

using nlohmann::json;

double require_number(const json& node, const char* key, const std::string& where) {
    if (!node.contains(key) || !node[key].is_number()) {
        throw Error(ErrorCode::InvalidScenario,
                    where + " needs a numeric field '" + key + "'");
    }
    return node[key].get<double>();
}

Position3D read_position(const json& node, const std::string& where) {
    return Position3D{require_number(node, "x", where), require_number(node, "y", where),
                      require_number(node, "z", where)};
}

}  // namespace

Scenario parse_scenario_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FileError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::InvalidScenario, "scenario document must be a JSON object");
    }

    Scenario scenario;
    try {
        scenario.uav_id.id = doc.value("uav_id", std::string("FF1"));
        scenario.message_format =
            message_format_from_string(doc.value("message_format", std::string("M3")));
        scenario.seed = doc.value("seed", std::uint64_t{0});
        scenario.loss_probability = doc.value("loss_probability", 0.0);

        if (doc.contains("truth_model")) {
            const auto& model = doc["truth_model"];
            scenario.truth_model.L = require_number(model, "L", "truth_model");
            scenario.truth_model.C = require_number(model, "C", "truth_model");
        } else {
            throw Error(ErrorCode::InvalidScenario, "scenario needs a 'truth_model' object");
        }

        if (doc.contains("schedule")) {
            const auto& schedule = doc["schedule"];
            scenario.schedule.interval_s = schedule.value("interval_s", 2.0);
            scenario.schedule.window_size = schedule.value("window_size", 5);
        }

        if (doc.contains("noise")) {
            const auto& noise = doc["noise"];
            if (noise.contains("anchors")) {
                for (const auto& anchor : noise["anchors"]) {
                    scenario.noise.anchors.push_back(
                        {require_number(anchor, "distance_m", "noise anchor"),
                         require_number(anchor, "std_dev_db", "noise anchor")});
                }
            }
            if (noise.contains("per_format_offset_db")) {
                for (const auto& [key, value] : noise["per_format_offset_db"].items()) {
                    if (!value.is_number()) {
                        throw Error(ErrorCode::InvalidScenario,
                                    "per-format offsets must be numbers");
                    }
                    scenario.noise.per_format_offset_db[message_format_from_string(key)] =
                        value.get<double>();
                }
            }
        }
        if (scenario.noise.anchors.empty()) {
            // No noise block means a noiseless channel.
            scenario.noise.anchors.push_back({1.0, 0.0});
        }

        if (!doc.contains("stations") || !doc["stations"].is_array()) {
            throw Error(ErrorCode::InvalidScenario, "scenario needs a 'stations' array");
        }
        for (const auto& node : doc["stations"]) {
            GroundStation station;
            if (!node.contains("id") || !node["id"].is_string()) {
                throw Error(ErrorCode::InvalidScenario, "every station needs a string 'id'");
            }
            station.id = node["id"].get<std::string>();
            station.position = read_position(node, "station '" + station.id + "'");
            station.bias_db = node.value("bias_db", 0.0);
            scenario.stations.push_back(std::move(station));
        }

        if (!doc.contains("waypoints") || !doc["waypoints"].is_array()) {
            throw Error(ErrorCode::InvalidScenario, "scenario needs a 'waypoints' array");
        }
        for (const auto& node : doc["waypoints"]) {
            Waypoint waypoint;
            waypoint.position = read_position(node, "waypoint");
            waypoint.dwell_s = require_number(node, "dwell_s", "waypoint");
            scenario.waypoints.push_back(waypoint);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidScenario,
                    std::string("scenario document is malformed: ") + e.what());
    }

    scenario.validate();
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario_json(text.str());
}

}  // namespace uavloc

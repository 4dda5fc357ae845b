#include "uavloc/station_net.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "uavloc/errors.hpp"
#include "uavloc/text.hpp"

namespace uavloc {

namespace {

bool clean_id(const std::string& id) {
    return !id.empty() && id.find_first_of(",\r\n") == std::string::npos;
}

double wall_clock_s() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    return std::chrono::duration<double>(now).count();
}

}  // namespace

std::string encode_report(const StationReport& report) {
    if (!clean_id(report.station_id) || !clean_id(report.uav_id)) {
        throw Error(ErrorCode::MalformedLine,
                    "report ids must be non-empty and free of ',' and line breaks");
    }
    if (!std::isfinite(report.window_end_s) || !std::isfinite(report.mean_rssi_db)) {
        throw Error(ErrorCode::MalformedLine, "report numbers must be finite");
    }
    if (report.sample_count < 1) {
        throw Error(ErrorCode::MalformedLine, "report needs at least one sample");
    }
    std::string line;
    line += report.station_id;
    line += ',';
    line += report.uav_id;
    line += ',';
    line += text::format_seconds(report.window_end_s);
    line += ',';
    line += text::format_db(report.mean_rssi_db);
    line += ',';
    line += std::to_string(report.sample_count);
    line += '\n';
    return line;
}

StationReport parse_report(std::string_view line) {
    const auto body = text::strip_line_ending(line);
    const auto fields = text::split_fields(body, ',');
    if (fields.size() != 5) {
        std::ostringstream msg;
        msg << "report line needs 5 fields, got " << fields.size();
        throw Error(ErrorCode::MalformedLine, msg.str());
    }
    StationReport report;
    report.station_id = std::string(fields[0]);
    report.uav_id = std::string(fields[1]);
    if (report.station_id.empty() || report.uav_id.empty()) {
        throw Error(ErrorCode::MalformedLine, "report ids must be non-empty");
    }
    const auto window_end = text::parse_double(fields[2]);
    const auto mean_rssi = text::parse_double(fields[3]);
    const auto count = text::parse_int(fields[4]);
    if (!window_end || !mean_rssi || !count || *count < 1 || *count > 1'000'000) {
        throw Error(ErrorCode::MalformedLine, "report has non-numeric or out-of-range fields");
    }
    report.window_end_s = *window_end;
    report.mean_rssi_db = *mean_rssi;
    report.sample_count = static_cast<int>(*count);
    return report;
}

std::vector<StationReport> window_reports(const std::vector<RssiSample>& samples,
                                          int window_size) {
    if (window_size < 1) {
        throw Error(ErrorCode::EmptyWindow, "window size must be at least 1");
    }
    std::vector<StationReport> reports;
    const std::size_t width = static_cast<std::size_t>(window_size);
    for (std::size_t start = 0; start + width <= samples.size(); start += width) {
        const std::vector<RssiSample> window(samples.begin() + static_cast<std::ptrdiff_t>(start),
                                             samples.begin() + static_cast<std::ptrdiff_t>(start + width));
        const MeanRssi mean = mean_rssi(window);
        StationReport report;
        report.station_id = window.front().station_id;
        report.uav_id = window.front().uav_id;
        report.window_end_s = mean.window_end_s;
        report.mean_rssi_db = mean.value_db;
        report.sample_count = mean.sample_count;
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<StationReport> merge_reports(std::vector<StationReport> reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const StationReport& a, const StationReport& b) {
                         if (a.window_end_s != b.window_end_s)
                             return a.window_end_s < b.window_end_s;
                         if (a.station_id != b.station_id) return a.station_id < b.station_id;
                         return a.uav_id < b.uav_id;
                     });
    return reports;
}

void StationRegistry::add(const std::string& station_id, const Position3D& position) {
    if (!stations_.emplace(station_id, position).second) {
        throw Error(ErrorCode::DuplicateStation,
                    "station '" + station_id + "' is already registered");
    }
}

const Position3D* StationRegistry::find(const std::string& station_id) const {
    const auto it = stations_.find(station_id);
    return it == stations_.end() ? nullptr : &it->second;
}

StationRegistry StationRegistry::from_csv(std::istream& in) {
    StationRegistry registry;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::strip_line_ending(line);
        if (body.empty()) continue;
        if (line_no == 1 && body == "station_id,x_m,y_m,z_m") continue;
        const auto fields = text::split_fields(body, ',');
        std::ostringstream where;
        where << "station registry line " << line_no;
        if (fields.size() != 4 || fields[0].empty()) {
            throw FileError(where.str() + ": expected 'station_id,x_m,y_m,z_m'");
        }
        const auto x = text::parse_double(fields[1]);
        const auto y = text::parse_double(fields[2]);
        const auto z = text::parse_double(fields[3]);
        if (!x || !y || !z) {
            throw FileError(where.str() + ": coordinates must be finite numbers");
        }
        try {
            registry.add(std::string(fields[0]), Position3D{*x, *y, *z});
        } catch (const Error& e) {
            throw FileError(where.str() + ": " + e.what());
        }
    }
    return registry;
}

StationRegistry StationRegistry::from_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open station registry '" + path + "'");
    return from_csv(in);
}

std::string fix_csv_header() { return "uav_id,x_m,y_m,z_m,residual_m,path,status\n"; }

std::string fix_csv_row(const FixRecord& fix) {
    std::string row = fix.uav_id;
    if (fix.outcome) {
        const auto& o = *fix.outcome;
        row += ',';
        row += text::format_shortest(o.position.x);
        row += ',';
        row += text::format_shortest(o.position.y);
        row += ',';
        row += text::format_shortest(o.position.z);
        row += ',';
        row += text::format_shortest(o.residual_norm_m);
        row += ',';
        row += to_string(o.path);
        row += ",ok\n";
    } else {
        row += ",,,,,,";
        row += fix.failure;
        row += '\n';
    }
    return row;
}

Collector::Collector(StationRegistry registry, PathLossModel model, CollectorOptions options)
    : registry_(std::move(registry)), model_(model), options_(options) {
    if (model_.L == 0.0) {
        throw Error(ErrorCode::DegenerateModel,
                    "collector needs an invertible path-loss model (L != 0)");
    }
    if (options_.min_stations < kMinStations) options_.min_stations = kMinStations;
}

std::optional<FixRecord> Collector::ingest(const StationReport& report) {
    if (registry_.find(report.station_id) == nullptr) {
        ++counters_.unknown_station;
        return std::nullopt;
    }
    ++counters_.reports_accepted;

    auto& window = windows_[report.uav_id];
    window[report.station_id] = report;  // freshest report per station wins

    double newest = -std::numeric_limits<double>::infinity();
    for (const auto& [id, r] : window) newest = std::max(newest, r.window_end_s);
    for (auto it = window.begin(); it != window.end();) {
        if (it->second.window_end_s < newest - options_.max_age_s) {
            it = window.erase(it);
        } else {
            ++it;
        }
    }

    if (window.size() < options_.min_stations) return std::nullopt;
    FixRecord fix = attempt_fix(report.uav_id);
    windows_.erase(report.uav_id);  // all contributing reports are consumed
    return fix;
}

FixRecord Collector::attempt_fix(const std::string& uav_id) {
    const auto& window = windows_[uav_id];

    FixRecord fix;
    fix.uav_id = uav_id;
    fix.wall_time_s = wall_clock_s();
    fix.newest_window_end_s = -std::numeric_limits<double>::infinity();
    fix.contributing.reserve(window.size());
    for (const auto& [id, report] : window) {  // map order: sorted by station id
        fix.contributing.push_back(report);
        fix.newest_window_end_s = std::max(fix.newest_window_end_s, report.window_end_s);
    }

    std::vector<SphereConstraint> constraints;
    constraints.reserve(fix.contributing.size());
    for (const auto& report : fix.contributing) {
        const Position3D* position = registry_.find(report.station_id);
        const DistanceEstimate estimate = estimate_distance(model_, report.mean_rssi_db);
        constraints.push_back({*position, estimate.distance_m, report.station_id});
    }

    try {
        fix.outcome = locate(constraints);
        ++counters_.fixes_ok;
    } catch (const ImaginaryHeightError& e) {
        fix.failure = error_code_name(e.code());
        fix.failure_detail = e.what();
        ++counters_.fixes_failed;
    } catch (const Error& e) {
        fix.failure = error_code_name(e.code());
        fix.failure_detail = e.what();
        ++counters_.fixes_failed;
    }
    return fix;
}

std::optional<FixRecord> Collector::ingest_line(std::string_view line) {
    StationReport report;
    try {
        report = parse_report(line);
    } catch (const Error&) {
        ++counters_.malformed_lines;
        return std::nullopt;
    }
    return ingest(report);
}

std::vector<FixRecord> Collector::ingest_stream(std::istream& in) {
    std::vector<FixRecord> fixes;
    std::string line;
    while (std::getline(in, line)) {
        if (text::strip_line_ending(line).empty()) continue;
        if (auto fix = ingest_line(line)) fixes.push_back(std::move(*fix));
    }
    return fixes;
}

std::vector<std::string> LineAssembler::feed(std::string_view bytes) {
    std::vector<std::string> lines;
    for (char c : bytes) {
        if (c == '\n') {
            if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
            lines.push_back(std::move(buffer_));
            buffer_.clear();
        } else {
            buffer_ += c;
        }
    }
    return lines;
}

std::optional<std::string> LineAssembler::finish() {
    if (buffer_.empty()) return std::nullopt;
    std::string rest = std::move(buffer_);
    buffer_.clear();
    return rest;
}

}  // namespace uavloc

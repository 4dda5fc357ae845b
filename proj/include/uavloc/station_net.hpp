#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavloc/pathloss.hpp"
#include "uavloc/trilateration.hpp"

namespace uavloc {

/// One completed averaging window, as a ground station reports it to the
/// collector.
struct StationReport {
    std::string station_id;
    std::string uav_id;
    double window_end_s = 0.0;
    double mean_rssi_db = 0.0;
    int sample_count = 0;

    bool operator==(const StationReport&) const = default;
};

/// CSV wire line `station_id,uav_id,window_end_s,mean_rssi_db,sample_count`,
/// newline-terminated, '.' decimals, mean RSSI with at least two decimal
/// places. Throws MalformedLine when the report cannot produce a line that
/// parses back to itself (empty ids, ids containing ',' or newlines,
/// non-finite numbers, sample_count < 1).
std::string encode_report(const StationReport& report);

/// Exact inverse of encode_report. Throws MalformedLine.
StationReport parse_report(std::string_view line);

/// Groups a station's time-ordered samples into consecutive completed windows
/// of `window_size` and averages each. A trailing partial window yields no
/// report.
std::vector<StationReport> window_reports(const std::vector<RssiSample>& samples,
                                          int window_size);

/// Deterministic merge order for batch processing: by window_end_s, then
/// station_id, then uav_id.
std::vector<StationReport> merge_reports(std::vector<StationReport> reports);

/// Known ground stations and their surveyed positions.
class StationRegistry {
public:
    /// Throws Error(DuplicateStation) when the id is already registered.
    void add(const std::string& station_id, const Position3D& position);

    const Position3D* find(const std::string& station_id) const;
    std::size_t size() const { return stations_.size(); }

    /// CSV `station_id,x_m,y_m,z_m`; a leading header line is skipped.
    /// Throws FileError on unreadable or malformed input.
    static StationRegistry from_csv(std::istream& in);
    static StationRegistry from_csv_file(const std::string& path);

private:
    std::map<std::string, Position3D> stations_;
};

/// Result of one localization attempt: either a position or the typed reason
/// it failed. Failures are data here, not exceptions.
struct FixRecord {
    std::string uav_id;
    std::optional<LocateOutcome> outcome;
    std::string failure;         // error-code token when outcome is empty
    std::string failure_detail;  // human-readable diagnostics
    std::vector<StationReport> contributing;  // sorted by station_id
    double newest_window_end_s = 0.0;
    double wall_time_s = 0.0;  // receipt time; never serialized
};

std::string fix_csv_header();
/// CSV row `uav_id,x_m,y_m,z_m,residual_m,path,status`; numeric fields stay
/// empty on failure and status carries the error token.
std::string fix_csv_row(const FixRecord& fix);

struct CollectorOptions {
    double max_age_s = 30.0;  // reports older than this (vs the newest) are evicted
    std::size_t min_stations = kMinStations;
};

/// Fuses per-station reports into position fixes: keeps the most recent
/// report per (uav, station), evicts stale ones, and runs trilateration as
/// soon as enough stations have reported. All mutation happens on the calling
/// thread; feed it one ordered report sequence.
class Collector {
public:
    /// Throws Error(DegenerateModel) when the model cannot be inverted (L = 0).
    Collector(StationRegistry registry, PathLossModel model, CollectorOptions options = {});

    /// Returns a FixRecord when this report completed a constraint set.
    /// Reports from stations missing in the registry are dropped and counted.
    std::optional<FixRecord> ingest(const StationReport& report);

    /// Parses and ingests one wire line. Malformed lines are dropped and
    /// counted, mirroring how a live collector must survive garbage input.
    std::optional<FixRecord> ingest_line(std::string_view line);

    /// Drains a newline-delimited stream (a log file replay or a piped
    /// connection; results are identical either way).
    std::vector<FixRecord> ingest_stream(std::istream& in);

    struct Counters {
        std::size_t reports_accepted = 0;
        std::size_t unknown_station = 0;
        std::size_t malformed_lines = 0;
        std::size_t fixes_ok = 0;
        std::size_t fixes_failed = 0;
    };

    const Counters& counters() const { return counters_; }
    const CollectorOptions& options() const { return options_; }
    const PathLossModel& model() const { return model_; }

private:
    FixRecord attempt_fix(const std::string& uav_id);

    StationRegistry registry_;
    PathLossModel model_;
    CollectorOptions options_;
    Counters counters_;
    // uav -> station -> freshest report
    std::map<std::string, std::map<std::string, StationReport>> windows_;
};

/// Reassembles complete lines from arbitrary byte chunks, so any ordered
/// transport (file, pipe, socket) can drive the collector.
class LineAssembler {
public:
    /// Returns every line completed by this chunk, ending markers stripped.
    std::vector<std::string> feed(std::string_view bytes);

    /// Returns buffered trailing data without a newline, if any.
    std::optional<std::string> finish();

private:
    std::string buffer_;
};

}  // namespace uavloc

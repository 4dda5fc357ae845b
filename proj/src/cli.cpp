#include "uavloc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "uavloc/errors.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/simulator.hpp"
#include "uavloc/station_net.hpp"
#include "uavloc/text.hpp"

namespace uavloc::cli {

namespace {

namespace fs = std::filesystem;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << content;
    if (!out) throw FileError("failed while writing '" + path + "'");
}

std::string output_path(const GlobalOptions& opts, const std::string& filename) {
    fs::path dir = opts.out_dir.empty() ? fs::path(".") : fs::path(opts.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    return (dir / filename).string();
}

PathLossModel require_model(const GlobalOptions& opts) {
    if (opts.model_path.empty()) {
        throw FileError("no model file given; pass --model <file>");
    }
    return load_model_file(opts.model_path);
}

struct Fixed {
    double value;
    int decimals;
};

std::ostream& operator<<(std::ostream& out, const Fixed& f) {
    std::ostringstream tmp;
    tmp << std::fixed << std::setprecision(f.decimals) << f.value;
    return out << tmp.str();
}

}  // namespace

void save_model_file(const std::string& path, const PathLossModel& model) {
    std::string content = "L=" + text::format_shortest(model.L) + "\n" +
                          "C=" + text::format_shortest(model.C) + "\n";
    write_text_file(path, content);
}

PathLossModel load_model_file(const std::string& path) {
    const std::string content = read_text_file(path);
    std::istringstream in(content);
    std::string line;
    PathLossModel model;
    bool have_l = false, have_c = false;
    while (std::getline(in, line)) {
        const auto body = text::strip_line_ending(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw FileError("model file '" + path + "': expected 'L=<value>' and 'C=<value>' lines");
        }
        const auto key = body.substr(0, eq);
        const auto value = text::parse_double(body.substr(eq + 1));
        if (!value) throw FileError("model file '" + path + "': non-numeric value for '" +
                                    std::string(key) + "'");
        if (key == "L") {
            model.L = *value;
            have_l = true;
        } else if (key == "C") {
            model.C = *value;
            have_c = true;
        } else {
            throw FileError("model file '" + path + "': unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_l || !have_c) {
        throw FileError("model file '" + path + "' must define both L and C");
    }
    return model;
}

std::vector<CalibrationPoint> load_calibration_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open calibration file '" + path + "'");

    std::vector<CalibrationPoint> points;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::strip_line_ending(line);
        if (body.empty()) continue;
        if (!saw_header) {
            if (body != "distance_m,mean_rssi_db") {
                throw FileError("calibration file '" + path +
                                "' must start with header 'distance_m,mean_rssi_db'");
            }
            saw_header = true;
            continue;
        }
        const auto fields = text::split_fields(body, ',');
        std::ostringstream where;
        where << "calibration file '" << path << "' line " << line_no;
        if (fields.size() != 2) throw FileError(where.str() + ": expected 2 fields");
        const auto distance = text::parse_double(fields[0]);
        const auto rssi = text::parse_double(fields[1]);
        if (!distance || !rssi) throw FileError(where.str() + ": non-numeric field");
        points.push_back({*distance, *rssi});
    }
    if (!saw_header) throw FileError("calibration file '" + path + "' is empty");
    if (points.empty()) throw FileError("calibration file '" + path + "' has no data rows");
    return points;
}

int cmd_fit(const std::string& calibration_csv, const GlobalOptions& opts,
            std::ostream& out, std::ostream& err) {
    std::vector<CalibrationPoint> points;
    try {
        points = load_calibration_csv(calibration_csv);
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    }

    try {
        const auto [model, report] = fit_model(points);
        const std::string model_path =
            opts.model_path.empty() ? output_path(opts, "model.txt") : opts.model_path;
        save_model_file(model_path, model);

        out << "points:    " << report.n_points << "\n";
        out << "slope:     " << Fixed{report.slope, 4} << " dB/decade\n";
        out << "intercept: " << Fixed{report.intercept, 4} << " dB\n";
        out << "L:         " << Fixed{model.L, 4} << "\n";
        out << "C:         " << Fixed{model.C, 4} << " dB\n";
        out << "R^2:       " << Fixed{report.r_squared, 4} << "\n";
        const CalibrationVerdict verdict = assess_calibration(report, model);
        if (verdict.usable) {
            out << "calibration: usable\n";
        } else {
            out << "calibration: rejected (" << verdict.reason << ")\n";
        }
        out << "model written to " << model_path << "\n";
        return kExitOk;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

int cmd_predict(double distance_m, const GlobalOptions& opts,
                std::ostream& out, std::ostream& err) {
    try {
        const PathLossModel model = require_model(opts);
        out << Fixed{predict_rssi(model, distance_m), 2} << "\n";
        return kExitOk;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

int cmd_distance(double mean_rssi_db, const GlobalOptions& opts,
                 std::ostream& out, std::ostream& err) {
    try {
        const PathLossModel model = require_model(opts);
        const DistanceEstimate estimate = estimate_distance(model, mean_rssi_db);
        out << Fixed{estimate.distance_m, 2};
        if (estimate.low_confidence) out << " low-confidence";
        out << "\n";
        return kExitOk;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

int cmd_slant(double gd_m, double h_m, std::optional<double> beta_deg,
              std::optional<double> alpha_deg, const GlobalOptions&,
              std::ostream& out, std::ostream& err) {
    try {
        double beta = 0.0;
        if (beta_deg && alpha_deg) {
            err << "error: give either --beta or --alpha, not both\n";
            return kExitUsageError;
        } else if (beta_deg) {
            beta = *beta_deg;
        } else if (alpha_deg) {
            beta = beta_from_alpha(*alpha_deg);
        } else {
            err << "error: one of --beta or --alpha is required\n";
            return kExitUsageError;
        }
        out << Fixed{slant_distance(gd_m, h_m, beta), 2} << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

int cmd_locate(const std::string& stations_csv, const std::string& reports_csv,
               const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    StationRegistry registry;
    std::vector<StationReport> reports;
    PathLossModel model;
    try {
        registry = StationRegistry::from_csv_file(stations_csv);
        model = require_model(opts);

        std::ifstream in(reports_csv, std::ios::binary);
        if (!in) throw FileError("cannot open report log '" + reports_csv + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (text::strip_line_ending(line).empty()) continue;
            try {
                reports.push_back(parse_report(line));
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << "report log '" << reports_csv << "' line " << line_no << ": " << e.what();
                throw FileError(msg.str());
            }
        }
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    }

    try {
        if (registry.size() < kMinStations) {
            std::ostringstream msg;
            msg << "need at least " << kMinStations << " registered stations for a 3-D fix, got "
                << registry.size();
            throw Error(ErrorCode::TooFewStations, msg.str());
        }

        reports = merge_reports(std::move(reports));

        out << "station    mean_rssi_db    est_sd_m    flags\n";
        for (const auto& report : reports) {
            if (registry.find(report.station_id) == nullptr) continue;
            const DistanceEstimate estimate = estimate_distance(model, report.mean_rssi_db);
            out << std::left << std::setw(11) << report.station_id << std::right
                << std::setw(12) << Fixed{report.mean_rssi_db, 2} << std::setw(12)
                << Fixed{estimate.distance_m, 2} << "    "
                << (estimate.low_confidence ? "low-confidence" : "") << "\n";
        }

        Collector collector(std::move(registry), model);
        std::string fix_log = fix_csv_header();
        std::size_t fixes_ok = 0, fixes_failed = 0;
        for (const auto& report : reports) {
            const auto fix = collector.ingest(report);
            if (!fix) continue;
            fix_log += fix_csv_row(*fix);
            if (fix->outcome) {
                ++fixes_ok;
                const auto& o = *fix->outcome;
                out << "fix: uav=" << fix->uav_id << " x=" << Fixed{o.position.x, 3}
                    << " y=" << Fixed{o.position.y, 3} << " z=" << Fixed{o.position.z, 3}
                    << " residual=" << text::format_shortest(o.residual_norm_m)
                    << " path=" << to_string(o.path) << "\n";
            } else {
                ++fixes_failed;
                out << "fix failed: uav=" << fix->uav_id << " reason=" << fix->failure << " ("
                    << fix->failure_detail << ")\n";
            }
        }
        write_text_file(output_path(opts, "fixes.csv"), fix_log);

        if (collector.counters().unknown_station > 0) {
            out << "dropped " << collector.counters().unknown_station
                << " report(s) from unregistered stations\n";
        }
        if (fixes_ok == 0 && fixes_failed == 0) {
            err << "error: no fix attempted; need reports from at least " << kMinStations
                << " stations within one freshness window\n";
            return kExitDomainError;
        }
        return fixes_ok > 0 ? kExitOk : kExitDomainError;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

int cmd_simulate(const std::string& scenario_path, const GlobalOptions& opts,
                 std::ostream& out, std::ostream& err) {
    Scenario scenario;
    try {
        scenario = load_scenario(scenario_path);
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }

    try {
        if (opts.seed) scenario.seed = *opts.seed;
        const std::vector<StationStream> streams = simulate(scenario);

        std::string samples_csv = "station_id,uav_id,timestamp_s,rssi_db,truth_distance_m\n";
        std::size_t sample_count = 0;
        std::vector<StationReport> reports;
        for (const auto& stream : streams) {
            std::vector<RssiSample> samples;
            samples.reserve(stream.samples.size());
            for (const auto& emitted : stream.samples) {
                const auto& s = emitted.sample;
                samples_csv += s.station_id;
                samples_csv += ',';
                samples_csv += s.uav_id;
                samples_csv += ',';
                samples_csv += text::format_seconds(s.timestamp_s);
                samples_csv += ',';
                samples_csv += text::format_db(s.rssi_db);
                samples_csv += ',';
                samples_csv += text::format_shortest(emitted.truth_distance_m);
                samples_csv += '\n';
                samples.push_back(s);
                ++sample_count;
            }
            for (auto& report : window_reports(samples, scenario.schedule.window_size)) {
                reports.push_back(std::move(report));
            }
        }

        reports = merge_reports(std::move(reports));
        std::string reports_csv;
        for (const auto& report : reports) reports_csv += encode_report(report);

        StationRegistry registry;
        for (const auto& station : scenario.stations) registry.add(station.id, station.position);
        Collector collector(std::move(registry), scenario.truth_model);
        std::string fixes_csv = fix_csv_header();
        std::size_t fixes_ok = 0, fixes_failed = 0;
        for (const auto& report : reports) {
            if (const auto fix = collector.ingest(report)) {
                fixes_csv += fix_csv_row(*fix);
                fix->outcome ? ++fixes_ok : ++fixes_failed;
            }
        }

        const std::string samples_path = output_path(opts, "samples.csv");
        const std::string reports_path = output_path(opts, "reports.csv");
        const std::string fixes_path = output_path(opts, "fixes.csv");
        write_text_file(samples_path, samples_csv);
        write_text_file(reports_path, reports_csv);
        write_text_file(fixes_path, fixes_csv);

        out << "stations:  " << scenario.stations.size() << "\n";
        out << "waypoints: " << scenario.waypoints.size() << "\n";
        out << "samples:   " << sample_count << "\n";
        out << "reports:   " << reports.size() << "\n";
        out << "fixes:     " << fixes_ok << " ok, " << fixes_failed << " failed\n";
        out << "wrote " << samples_path << ", " << reports_path << ", " << fixes_path << "\n";
        return kExitOk;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

}  // namespace uavloc::cli

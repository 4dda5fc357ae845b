#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "uavloc/cli.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/pathloss.hpp"
#include "uavloc/reference_tables.hpp"
#include "uavloc/text.hpp"

// Reproduction of the published reference tables. Each replay recomputes the
// derived columns from the published inputs and diffs them cell by cell.

namespace uavloc::cli {

namespace {

namespace ref = uavloc::reference;

// Print-rounding of the published tables bounds how closely a derived cell
// can be reproduced; these are the agreed reproduction tolerances.
constexpr double kSlantToleranceM = 0.05;
constexpr double kStatsToleranceDb = 0.01;
constexpr double kEstimateToleranceM = 1.0;
constexpr double kErrorTolerancePct = 1.0;
constexpr double kFitLTolerance = 0.005;
constexpr double kFitCTolerance = 0.10;
constexpr double kFitR2Tolerance = 0.005;

struct CellCheck {
    std::string label;
    double computed;
    double published;
    double tolerance;

    bool ok() const { return std::abs(computed - published) <= tolerance; }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << content;
}

std::string artifact_path(const GlobalOptions& opts, const std::string& filename) {
    namespace fs = std::filesystem;
    fs::path dir = opts.out_dir.empty() ? fs::path(".") : fs::path(opts.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    return (dir / filename).string();
}

int report_checks(const std::vector<CellCheck>& checks, std::ostream& out) {
    std::size_t failures = 0;
    for (const auto& check : checks) {
        const double diff = std::abs(check.computed - check.published);
        out << (check.ok() ? "  ok   " : "  FAIL ") << check.label << ": computed "
            << std::fixed << std::setprecision(4) << check.computed << ", published "
            << check.published << ", diff " << diff << " (tolerance " << check.tolerance
            << ")\n";
        out.unsetf(std::ios::floatfield);
        if (!check.ok()) ++failures;
    }
    if (failures == 0) {
        out << "all " << checks.size() << " cells within tolerance\n";
        return kExitOk;
    }
    out << failures << " of " << checks.size() << " cells out of tolerance\n";
    return kExitDomainError;
}

std::vector<CalibrationPoint> calibration_pairs() {
    std::vector<CalibrationPoint> points;
    for (std::size_t i = 0; i < 6; ++i) {
        points.push_back({ref::kSlantSurvey[i].sd_m, ref::kSeeeduinoStats[i].mean});
    }
    return points;
}

std::vector<CellCheck> fit_checks() {
    const auto [model, report] = fit_model(calibration_pairs());
    return {
        {"L", model.L, ref::kPublishedL, kFitLTolerance},
        {"C", model.C, ref::kPublishedC, kFitCTolerance},
        {"R^2", report.r_squared, ref::kPublishedR2, kFitR2Tolerance},
    };
}

int replay_slant_survey(const GlobalOptions& opts, std::ostream& out) {
    std::vector<CellCheck> checks;
    std::string csv = "nominal_m,gd_m,h_m,beta_deg,sd_computed_m,sd_published_m,abs_diff_m\n";
    for (const auto& row : ref::kSlantSurvey) {
        const double beta = beta_from_alpha(row.alpha_deg);  // printed beta must agree
        const double sd = slant_distance(row.gd_m, row.h_m, row.beta_deg);
        std::ostringstream label;
        label << "SD at " << row.nominal_m << " m";
        checks.push_back({label.str(), sd, row.sd_m, kSlantToleranceM});
        std::ostringstream beta_label;
        beta_label << "beta at " << row.nominal_m << " m";
        checks.push_back({beta_label.str(), beta, row.beta_deg, 0.05});

        csv += text::format_shortest(row.nominal_m) + "," + text::format_shortest(row.gd_m) +
               "," + text::format_shortest(row.h_m) + "," + text::format_shortest(row.beta_deg) +
               "," + text::format_shortest(sd) + "," + text::format_shortest(row.sd_m) + "," +
               text::format_shortest(std::abs(sd - row.sd_m)) + "\n";
    }
    write_file(artifact_path(opts, "replay_table2.csv"), csv);
    return report_checks(checks, out);
}

int replay_rssi_statistics(const GlobalOptions& opts, std::ostream& out) {
    std::vector<CellCheck> checks;
    std::string csv =
        "nominal_m,n,mean_db,std_dev_db,std_err_computed_db,ci_lo_computed_db,"
        "ci_hi_computed_db,std_err_published_db,ci_lo_published_db,ci_hi_published_db\n";
    for (const auto& row : ref::kSeeeduinoStats) {
        const double n = ref::kSamplesPerDistance;
        const double std_err = row.std_dev / std::sqrt(n);
        const double ci_lo = row.mean - 1.96 * std_err;
        const double ci_hi = row.mean + 1.96 * std_err;

        std::ostringstream prefix;
        prefix << row.nominal_m << " m ";
        checks.push_back({prefix.str() + "std err", std_err, row.std_err, kStatsToleranceDb});
        checks.push_back({prefix.str() + "CI lo", ci_lo, row.ci_lo, kStatsToleranceDb});
        checks.push_back({prefix.str() + "CI hi", ci_hi, row.ci_hi, kStatsToleranceDb});

        csv += text::format_shortest(row.nominal_m) + "," + std::to_string(ref::kSamplesPerDistance) +
               "," + text::format_db(row.mean) + "," + text::format_db(row.std_dev) + "," +
               text::format_shortest(std_err) + "," + text::format_shortest(ci_lo) + "," +
               text::format_shortest(ci_hi) + "," + text::format_db(row.std_err) + "," +
               text::format_db(row.ci_lo) + "," + text::format_db(row.ci_hi) + "\n";
    }
    for (auto& check : fit_checks()) checks.push_back(std::move(check));
    write_file(artifact_path(opts, "replay_table3.csv"), csv);
    return report_checks(checks, out);
}

int replay_location_trial(const GlobalOptions& opts, std::ostream& out) {
    const PathLossModel model{ref::kPublishedL, ref::kPublishedC};
    std::vector<CellCheck> checks;
    std::string csv =
        "station_id,mean_rssi_db,est_sd_computed_m,est_sd_published_m,real_sd_m,"
        "error_computed_pct,error_published_pct\n";
    for (const auto& row : ref::kLocationTrial) {
        const DistanceEstimate estimate = estimate_distance(model, row.mean_rssi_db);
        const double error = distance_error_pct(estimate.distance_m, row.real_sd_m);
        checks.push_back({std::string(row.station_id) + " est SD", estimate.distance_m,
                          row.est_sd_m, kEstimateToleranceM});
        checks.push_back({std::string(row.station_id) + " error %", error, row.error_pct,
                          kErrorTolerancePct});
        csv += std::string(row.station_id) + "," + text::format_db(row.mean_rssi_db) + "," +
               text::format_shortest(estimate.distance_m) + "," +
               text::format_shortest(row.est_sd_m) + "," + text::format_shortest(row.real_sd_m) +
               "," + text::format_shortest(error) + "," + text::format_shortest(row.error_pct) +
               "\n";
    }
    write_file(artifact_path(opts, "replay_table5.csv"), csv);
    return report_checks(checks, out);
}

int replay_regression_line(const GlobalOptions& opts, std::ostream& out) {
    const auto [model, report] = fit_model(calibration_pairs());
    std::string csv = "slant_distance_m,log10_distance,measured_mean_db,fitted_db,residual_db\n";
    const auto points = calibration_pairs();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = std::log10(points[i].slant_distance_m);
        const double fitted = report.slope * x + report.intercept;
        csv += text::format_shortest(points[i].slant_distance_m) + "," +
               text::format_shortest(x) + "," + text::format_db(points[i].mean_rssi_db) + "," +
               text::format_shortest(fitted) + "," +
               text::format_shortest(report.residuals_db[i]) + "\n";
    }
    write_file(artifact_path(opts, "replay_fig6.csv"), csv);
    return report_checks(fit_checks(), out);
}

}  // namespace

int cmd_replay(const std::string& which, const GlobalOptions& opts,
               std::ostream& out, std::ostream& err) {
    try {
        if (which == "table2") return replay_slant_survey(opts, out);
        if (which == "table3") return replay_rssi_statistics(opts, out);
        if (which == "table5") return replay_location_trial(opts, out);
        if (which == "fig6") return replay_regression_line(opts, out);
        err << "error: unknown replay target '" << which
            << "' (expected table2, table3, table5 or fig6)\n";
        return kExitUsageError;
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}

}  // namespace uavloc::cli

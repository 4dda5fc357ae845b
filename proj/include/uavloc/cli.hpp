#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "uavloc/pathloss.hpp"

namespace uavloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

struct GlobalOptions {
    std::string model_path;                // --model
    std::optional<std::uint64_t> seed;     // --seed, overrides scenario seeds
    std::string out_dir = ".";             // --out
};

/// Model file format: two lines, `L=<value>` and `C=<value>`.
void save_model_file(const std::string& path, const PathLossModel& model);
PathLossModel load_model_file(const std::string& path);  // throws FileError

/// Calibration CSV with header `distance_m,mean_rssi_db`. Throws FileError.
std::vector<CalibrationPoint> load_calibration_csv(const std::string& path);

/// Fits a path-loss model from a calibration CSV, prints the regression
/// summary and writes the model file (--model path if given, else
/// <out>/model.txt).
int cmd_fit(const std::string& calibration_csv, const GlobalOptions& opts,
            std::ostream& out, std::ostream& err);

/// Predicted RSSI at a distance under the loaded model.
int cmd_predict(double distance_m, const GlobalOptions& opts,
                std::ostream& out, std::ostream& err);

/// Distance estimate for a mean RSSI under the loaded model.
int cmd_distance(double mean_rssi_db, const GlobalOptions& opts,
                 std::ostream& out, std::ostream& err);

/// Slant distance from ground distance, height and one of the two angles.
int cmd_slant(double gd_m, double h_m, std::optional<double> beta_deg,
              std::optional<double> alpha_deg, const GlobalOptions& opts,
              std::ostream& out, std::ostream& err);

/// Batch localization: station registry CSV + report log + model. Prints the
/// per-station distance estimates and every fix attempt; writes
/// <out>/fixes.csv. Exit 0 iff at least one fix succeeded.
int cmd_locate(const std::string& stations_csv, const std::string& reports_csv,
               const GlobalOptions& opts, std::ostream& out, std::ostream& err);

/// Runs a scenario end to end: writes <out>/samples.csv, <out>/reports.csv
/// and <out>/fixes.csv. Byte-identical outputs for identical inputs.
int cmd_simulate(const std::string& scenario_path, const GlobalOptions& opts,
                 std::ostream& out, std::ostream& err);

/// Recomputes one of the published reference tables (table2, table3, table5,
/// fig6), writes the reproduction CSV and diffs every derived cell against
/// the published value. Exit 0 iff every cell is within tolerance.
int cmd_replay(const std::string& which, const GlobalOptions& opts,
               std::ostream& out, std::ostream& err);

}  // namespace uavloc::cli

#pragma once

// Published measurement tables from the reference LoRaWAN field experiment
// (Seeeduino/Moteino modules, UAV at 50 m height). The replay command and the
// acceptance suite check this toolkit's arithmetic against these values.

namespace uavloc::reference {

/// Slant-distance survey: one row per nominal range. sd_m is the published
/// slant distance computed from (gd_m, h_m, beta_deg).
struct SlantRow {
    double nominal_m;
    double gd_m;
    double h_m;
    double beta_deg;
    double alpha_deg;
    double sd_m;
};

inline constexpr SlantRow kSlantSurvey[6] = {
    {100.0, 100.0, 50.0, 79.1, 10.9, 102.97},
    {200.0, 200.2, 50.0, 81.7, 8.3, 199.19},
    {300.0, 299.8, 50.0, 83.3, 6.7, 298.19},
    {400.0, 400.3, 50.0, 84.0, 6.0, 398.15},
    {500.0, 500.5, 50.0, 84.7, 5.3, 498.34},
    {600.0, 600.7, 50.0, 84.9, 5.1, 598.29},
};

/// Per-distance RSSI statistics for the Seeeduino module, 125 samples each.
struct RssiStatsRow {
    double nominal_m;
    double sample_variance;
    double std_dev;
    double std_err;
    double mean;
    double ci_lo;
    double ci_hi;
};

inline constexpr int kSamplesPerDistance = 125;

inline constexpr RssiStatsRow kSeeeduinoStats[6] = {
    {100.0, 4.78, 2.19, 0.20, -79.41, -79.79, -79.03},
    {200.0, 2.34, 1.53, 0.14, -82.94, -83.21, -82.68},
    {300.0, 2.62, 1.62, 0.14, -85.81, -86.09, -85.52},
    {400.0, 1.46, 1.21, 0.11, -85.58, -85.79, -85.37},
    {500.0, 1.30, 1.14, 0.10, -87.93, -88.13, -87.73},
    {600.0, 1.22, 1.10, 0.10, -88.32, -88.52, -88.13},
};

/// Model parameters published with the Seeeduino calibration.
inline constexpr double kPublishedL = 1.165;
inline constexpr double kPublishedC = -56.134;
inline constexpr double kPublishedR2 = 0.97;

/// Moteino module statistics: nearly flat means across 100-800 m, the
/// documented example of a calibration that must be rejected.
struct MoteinoRow {
    double nominal_m;
    double mean;
    double ci_lo;
    double ci_hi;
};

inline constexpr MoteinoRow kMoteinoStats[8] = {
    {100.0, -104.48, -104.61, -104.36},
    {200.0, -103.68, -103.81, -103.55},
    {300.0, -103.51, -103.61, -103.40},
    {400.0, -104.97, -105.03, -104.90},
    {500.0, -105.06, -105.11, -105.00},
    {600.0, -104.86, -104.93, -104.80},
    {700.0, -104.62, -104.72, -104.52},
    {800.0, -104.65, -104.75, -104.56},
};

/// Four-station localization trial: measured mean RSSI, the distance estimate
/// published for it, the map-measured true slant distance, and the published
/// error percentage.
struct LocationRow {
    const char* station_id;
    double mean_rssi_db;
    double est_sd_m;
    double real_sd_m;
    double error_pct;
};

inline constexpr LocationRow kLocationTrial[4] = {
    {"GS1", -80.0, 112.0, 146.0, 23.0},
    {"GS2", -86.0, 366.0, 161.0, 127.0},
    {"GS3", -79.0, 92.0, 140.0, 34.0},
    {"GS4", -81.0, 136.0, 155.0, 12.0},
};

/// Stations in the trial were 200 m apart at equal height; the exact corner
/// assignment was not published, so the replay uses this canonical square.
inline constexpr double kTrialStationSpacingM = 200.0;

}  // namespace uavloc::reference

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace uavloc {

/// One timestamped signal-strength reading as recorded by a ground station.
struct RssiSample {
    std::string station_id;
    std::string uav_id;
    double rssi_db = 0.0;
    double timestamp_s = 0.0;
};

/// Windowed average of several RSSI readings from one (station, uav) pair.
struct MeanRssi {
    double value_db = 0.0;
    int sample_count = 0;
    double window_start_s = 0.0;
    double window_end_s = 0.0;
};

/// Calibrated log-distance model: rssi(d) = -10 * L * log10(d) + C.
/// L is the path-loss exponent, C the regression intercept in dB.
struct PathLossModel {
    double L = 0.0;
    double C = 0.0;
};

/// One (distance, mean RSSI) pair used to fit the model.
struct CalibrationPoint {
    double slant_distance_m = 0.0;
    double mean_rssi_db = 0.0;
};

/// Ordinary least-squares fit of mean RSSI on log10(distance).
struct RegressionReport {
    double slope = 0.0;      // dB per decade of distance
    double intercept = 0.0;  // dB
    double r_squared = 0.0;
    int n_points = 0;
    std::vector<double> residuals_db;
};

/// Descriptive statistics with a z-based 95% confidence interval.
struct SampleStats {
    int n = 0;
    double mean = 0.0;
    double sample_variance = 0.0;  // (n-1) divisor
    double std_dev = 0.0;
    double std_err = 0.0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
};

/// Distance estimates closer than this are flagged low-confidence: short-range
/// RSSI is too variable to be usable.
inline constexpr double kLowConfidenceRangeM = 100.0;

struct DistanceEstimate {
    double distance_m = 0.0;
    bool low_confidence = false;
};

/// Arithmetic mean of the window. All samples must share station and UAV ids.
/// Throws EmptyWindow, MixedSource.
MeanRssi mean_rssi(const std::vector<RssiSample>& samples);

/// rssi = -10 * L * log10(d) + C. Throws NonPositiveDistance.
double predict_rssi(const PathLossModel& model, double distance_m);

/// d = 10^(-(rssi - C) / (10 * L)); exact inverse of predict_rssi.
/// Throws DegenerateModel when L is 0.
DistanceEstimate estimate_distance(const PathLossModel& model, double mean_rssi_db,
                                   double low_confidence_below_m = kLowConfidenceRangeM);

/// Least-squares fit of RSSI on log10(distance); L = -slope/10, C = intercept.
/// Needs at least two points at two distinct distances.
/// Throws InsufficientPoints, ZeroVarianceInDistance, NonPositiveDistance.
std::pair<PathLossModel, RegressionReport> fit_model(const std::vector<CalibrationPoint>& points);

struct CalibrationThresholds {
    double min_exponent = 0.1;   // reject when L is at or below this
    double min_r_squared = 0.8;  // reject when the fit explains less than this
};

struct CalibrationVerdict {
    bool usable = false;
    std::string reason;  // empty when usable
};

/// Flags calibrations whose fitted line is too flat or too noisy to invert.
CalibrationVerdict assess_calibration(const RegressionReport& report, const PathLossModel& model,
                                      const CalibrationThresholds& thresholds = {});

/// Sample mean/variance/std error and the z-based 95% CI. Throws TooFewSamples
/// when fewer than two values are given.
SampleStats describe_samples(const std::vector<double>& values_db);

/// True when the two confidence intervals share interior points. Intervals
/// that merely touch at an endpoint do not count as overlapping.
bool ci_overlap(const SampleStats& a, const SampleStats& b);

}  // namespace uavloc

#include "uavloc/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "uavloc/errors.hpp"

namespace uavloc {

namespace {

constexpr double kZ95 = 1.96;  // two-sided 95% normal quantile

}  // namespace

MeanRssi mean_rssi(const std::vector<RssiSample>& samples) {
    if (samples.empty()) {
        throw Error(ErrorCode::EmptyWindow, "cannot average an empty sample window");
    }
    const auto& first = samples.front();
    double sum = 0.0;
    double start = std::numeric_limits<double>::infinity();
    double end = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        if (s.station_id != first.station_id || s.uav_id != first.uav_id) {
            throw Error(ErrorCode::MixedSource,
                        "window mixes samples from different station/uav pairs");
        }
        sum += s.rssi_db;
        start = std::min(start, s.timestamp_s);
        end = std::max(end, s.timestamp_s);
    }
    MeanRssi mean;
    mean.value_db = sum / static_cast<double>(samples.size());
    mean.sample_count = static_cast<int>(samples.size());
    mean.window_start_s = start;
    mean.window_end_s = end;
    return mean;
}

double predict_rssi(const PathLossModel& model, double distance_m) {
    if (!(distance_m > 0.0)) {
        std::ostringstream msg;
        msg << "distance must be > 0 m, got " << distance_m;
        throw Error(ErrorCode::NonPositiveDistance, msg.str());
    }
    return -10.0 * model.L * std::log10(distance_m) + model.C;
}

DistanceEstimate estimate_distance(const PathLossModel& model, double mean_rssi_db,
                                   double low_confidence_below_m) {
    if (model.L == 0.0) {
        throw Error(ErrorCode::DegenerateModel,
                    "path-loss exponent is 0; RSSI carries no distance information");
    }
    DistanceEstimate estimate;
    estimate.distance_m = std::pow(10.0, -((mean_rssi_db - model.C) / (10.0 * model.L)));
    estimate.low_confidence = estimate.distance_m < low_confidence_below_m;
    return estimate;
}

std::pair<PathLossModel, RegressionReport> fit_model(const std::vector<CalibrationPoint>& points) {
    if (points.size() < 2) {
        throw Error(ErrorCode::InsufficientPoints,
                    "need at least two calibration points to fit a line");
    }
    const auto n = static_cast<double>(points.size());

    std::vector<double> xs(points.size());
    std::vector<double> ys(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].slant_distance_m > 0.0)) {
            throw Error(ErrorCode::NonPositiveDistance,
                        "calibration distances must be > 0 m");
        }
        xs[i] = std::log10(points[i].slant_distance_m);
        ys[i] = points[i].mean_rssi_db;
    }

    double x_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= n;
    y_mean /= n;

    // Centered sums are the numerically stable form of the textbook
    // slope = (sum(xy) - n*x_mean*y_mean) / (sum(x^2) - n*x_mean^2).
    double sxx = 0.0, sxy = 0.0, x_scale = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double dx = xs[i] - x_mean;
        sxx += dx * dx;
        sxy += dx * (ys[i] - y_mean);
        x_scale += xs[i] * xs[i];
    }
    if (sxx <= 1e-24 * std::max(x_scale, 1.0)) {
        throw Error(ErrorCode::ZeroVarianceInDistance,
                    "all calibration points share one distance; slope is undefined");
    }

    RegressionReport report;
    report.slope = sxy / sxx;
    report.intercept = y_mean - report.slope * x_mean;
    report.n_points = static_cast<int>(points.size());

    double ss_res = 0.0, ss_tot = 0.0;
    report.residuals_db.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double residual = ys[i] - (report.slope * xs[i] + report.intercept);
        report.residuals_db[i] = residual;
        ss_res += residual * residual;
        const double dy = ys[i] - y_mean;
        ss_tot += dy * dy;
    }
    // A perfectly flat response fits its own mean exactly.
    report.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;

    PathLossModel model;
    model.L = -report.slope / 10.0;
    model.C = report.intercept;
    return {model, report};
}

CalibrationVerdict assess_calibration(const RegressionReport& report, const PathLossModel& model,
                                      const CalibrationThresholds& thresholds) {
    if (!(model.L > thresholds.min_exponent)) {
        std::ostringstream reason;
        reason << "path-loss exponent L=" << model.L << " (slope " << report.slope
               << " dB/decade) is at or below the minimum " << thresholds.min_exponent
               << "; RSSI is nearly flat across distance";
        return {false, reason.str()};
    }
    if (report.r_squared < thresholds.min_r_squared) {
        std::ostringstream reason;
        reason << "R^2=" << report.r_squared << " is below the minimum "
               << thresholds.min_r_squared;
        return {false, reason.str()};
    }
    return {true, ""};
}

SampleStats describe_samples(const std::vector<double>& values_db) {
    if (values_db.size() < 2) {
        throw Error(ErrorCode::TooFewSamples,
                    "need at least two samples for variance and a confidence interval");
    }
    const auto n = static_cast<double>(values_db.size());

    SampleStats stats;
    stats.n = static_cast<int>(values_db.size());
    double sum = 0.0;
    for (double v : values_db) sum += v;
    stats.mean = sum / n;

    double ss = 0.0;
    for (double v : values_db) {
        const double d = v - stats.mean;
        ss += d * d;
    }
    stats.sample_variance = ss / (n - 1.0);
    stats.std_dev = std::sqrt(stats.sample_variance);
    stats.std_err = stats.std_dev / std::sqrt(n);
    stats.ci95_lo = stats.mean - kZ95 * stats.std_err;
    stats.ci95_hi = stats.mean + kZ95 * stats.std_err;
    return stats;
}

bool ci_overlap(const SampleStats& a, const SampleStats& b) {
    // Interior overlap only: intervals that just touch at a bound are treated
    // as statistically separated.
    return a.ci95_lo < b.ci95_hi && b.ci95_lo < a.ci95_hi;
}

}  // namespace uavloc

// Acceptance suite: runs every reproduction and pipeline criterion at its
// pinned tolerance and prints one PASS/FAIL line per criterion. Exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "uavloc/cli.hpp"
#include "uavloc/errors.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/pathloss.hpp"
#include "uavloc/reference_tables.hpp"
#include "uavloc/remote_id.hpp"
#include "uavloc/rng.hpp"
#include "uavloc/simulator.hpp"
#include "uavloc/station_net.hpp"
#include "uavloc/trilateration.hpp"

using namespace uavloc;
namespace ref = uavloc::reference;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

void report(int number, const std::string& title, const Outcome& outcome) {
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title;
    if (!outcome.detail.empty()) std::cout << " — " << outcome.detail;
    std::cout << "\n";
    if (!outcome.pass) ++g_failures;
}

std::string fmt(double v, int decimals = 4) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(decimals);
    s << v;
    return s.str();
}

double uniform(SplitMix64& rng, double lo, double hi) {
    return lo + rng.next_unit() * (hi - lo);
}

// ---------------------------------------------------------------------------
// 1. Slant-distance survey reproduction, each row within +/-0.05 m.

Outcome criterion_slant_survey() {
    Outcome outcome;
    for (const auto& row : ref::kSlantSurvey) {
        const double sd = slant_distance(row.gd_m, row.h_m, row.beta_deg);
        const double diff = std::abs(sd - row.sd_m);
        if (diff > 0.05) {
            outcome.fail(fmt(row.nominal_m, 0) + " m row: computed " + fmt(sd, 4) +
                         " m vs published " + fmt(row.sd_m, 2) + " m (diff " + fmt(diff, 4) +
                         " m > 0.05 m; the published row is inconsistent with its own inputs "
                         "under any rounding of them)");
        }
    }
    if (outcome.pass) outcome.detail = "all 6 rows within 0.05 m";
    return outcome;
}

// ---------------------------------------------------------------------------
// 2. Per-distance statistics: std err and 95% CI within +/-0.01 dB.

Outcome criterion_statistics() {
    Outcome outcome;
    for (const auto& row : ref::kSeeeduinoStats) {
        const double std_err = row.std_dev / std::sqrt(double(ref::kSamplesPerDistance));
        const double ci_lo = row.mean - 1.96 * std_err;
        const double ci_hi = row.mean + 1.96 * std_err;
        if (std::abs(std_err - row.std_err) > 0.01)
            outcome.fail(fmt(row.nominal_m, 0) + " m std err " + fmt(std_err));
        if (std::abs(ci_lo - row.ci_lo) > 0.01)
            outcome.fail(fmt(row.nominal_m, 0) + " m CI lo " + fmt(ci_lo));
        if (std::abs(ci_hi - row.ci_hi) > 0.01)
            outcome.fail(fmt(row.nominal_m, 0) + " m CI hi " + fmt(ci_hi));
    }
    if (outcome.pass) outcome.detail = "std err and CI bounds of all 6 columns within 0.01 dB";
    return outcome;
}

// ---------------------------------------------------------------------------
// 3. Regression recovery, confirmed against a brute-force oracle first.

std::vector<CalibrationPoint> calibration_pairs() {
    std::vector<CalibrationPoint> points;
    for (std::size_t i = 0; i < 6; ++i) {
        points.push_back({ref::kSlantSurvey[i].sd_m, ref::kSeeeduinoStats[i].mean});
    }
    return points;
}

// Independent oracle: iterated grid search minimizing the sum of squared RSSI
// residuals over (slope, intercept). No shared code with fit_model.
std::pair<double, double> grid_search_least_squares(const std::vector<CalibrationPoint>& points) {
    double slope_lo = -40.0, slope_hi = 20.0;
    double inter_lo = -120.0, inter_hi = 0.0;
    double best_slope = 0.0, best_inter = 0.0;
    for (int round = 0; round < 6; ++round) {
        double best_sse = std::numeric_limits<double>::infinity();
        for (int a = 0; a <= 80; ++a) {
            const double slope = slope_lo + (slope_hi - slope_lo) * a / 80.0;
            for (int b = 0; b <= 80; ++b) {
                const double inter = inter_lo + (inter_hi - inter_lo) * b / 80.0;
                double sse = 0.0;
                for (const auto& p : points) {
                    const double r =
                        p.mean_rssi_db - (slope * std::log10(p.slant_distance_m) + inter);
                    sse += r * r;
                }
                if (sse < best_sse) {
                    best_sse = sse;
                    best_slope = slope;
                    best_inter = inter;
                }
            }
        }
        const double slope_step = (slope_hi - slope_lo) / 80.0;
        const double inter_step = (inter_hi - inter_lo) / 80.0;
        slope_lo = best_slope - 2.0 * slope_step;
        slope_hi = best_slope + 2.0 * slope_step;
        inter_lo = best_inter - 2.0 * inter_step;
        inter_hi = best_inter + 2.0 * inter_step;
    }
    return {best_slope, best_inter};
}

Outcome criterion_regression() {
    Outcome outcome;
    const auto points = calibration_pairs();

    const auto [oracle_slope, oracle_inter] = grid_search_least_squares(points);
    const double oracle_l = -oracle_slope / 10.0;
    if (std::abs(oracle_l - 1.165) > 0.005)
        outcome.fail("oracle L " + fmt(oracle_l, 6) + " outside 1.165 +/- 0.005");
    if (std::abs(oracle_inter - (-56.13)) > 0.10)
        outcome.fail("oracle C " + fmt(oracle_inter, 6) + " outside -56.13 +/- 0.10");

    const auto [model, regression] = fit_model(points);
    if (std::abs(model.L - 1.165) > 0.005)
        outcome.fail("fitted L " + fmt(model.L, 6) + " outside 1.165 +/- 0.005");
    if (std::abs(model.C - (-56.13)) > 0.10)
        outcome.fail("fitted C " + fmt(model.C, 6) + " outside -56.13 +/- 0.10");
    if (std::abs(regression.r_squared - 0.97) > 0.005)
        outcome.fail("R^2 " + fmt(regression.r_squared, 6) + " outside 0.97 +/- 0.005");

    if (std::abs(model.L - oracle_l) > 1e-3 || std::abs(model.C - oracle_inter) > 1e-2)
        outcome.fail("closed-form fit disagrees with the brute-force oracle");

    if (outcome.pass) {
        outcome.detail = "L " + fmt(model.L, 4) + ", C " + fmt(model.C, 3) + ", R^2 " +
                         fmt(regression.r_squared, 4) + " (oracle agrees)";
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// 4. Distance estimation and error percentages of the location trial.

Outcome criterion_distance_estimation() {
    Outcome outcome;
    const PathLossModel model{1.165, -56.134};
    for (const auto& row : ref::kLocationTrial) {
        const double estimate = estimate_distance(model, row.mean_rssi_db).distance_m;
        if (std::abs(estimate - row.est_sd_m) > 1.0)
            outcome.fail(std::string(row.station_id) + " estimate " + fmt(estimate, 2));
        const double error = distance_error_pct(estimate, row.real_sd_m);
        if (std::abs(error - row.error_pct) > 1.0)
            outcome.fail(std::string(row.station_id) + " error " + fmt(error, 2) + "%");
    }
    if (outcome.pass)
        outcome.detail = "estimates within 1 m, error percentages within 1 point";
    return outcome;
}

// ---------------------------------------------------------------------------
// 5. Confidence-interval overlap over the published intervals.

Outcome criterion_ci_overlap() {
    Outcome outcome;
    auto interval = [](double lo, double hi) {
        SampleStats s;
        s.ci95_lo = lo;
        s.ci95_hi = hi;
        s.mean = 0.5 * (lo + hi);
        return s;
    };
    for (std::size_t i = 0; i + 1 < 6; ++i) {
        const auto& a = ref::kSeeeduinoStats[i];
        const auto& b = ref::kSeeeduinoStats[i + 1];
        const bool overlap = ci_overlap(interval(a.ci_lo, a.ci_hi), interval(b.ci_lo, b.ci_hi));
        const bool expected = (i == 2);  // only the 300/400 m pair overlaps
        if (overlap != expected) {
            outcome.fail(fmt(a.nominal_m, 0) + "/" + fmt(b.nominal_m, 0) + " m pair: got " +
                         (overlap ? "overlap" : "no overlap"));
        }
    }
    if (outcome.pass) outcome.detail = "only the 300/400 m intervals overlap";
    return outcome;
}

// ---------------------------------------------------------------------------
// 6. Trilateration property suite.

std::vector<Position3D> random_station_set(SplitMix64& rng, std::size_t extra) {
    std::vector<Position3D> stations;
    const Position3D corners[4] = {{0, 0, 0}, {400, 0, 0}, {0, 400, 0}, {200, 200, 250}};
    for (const auto& corner : corners) {
        stations.push_back({corner.x + uniform(rng, -40, 40), corner.y + uniform(rng, -40, 40),
                            std::max(0.0, corner.z + uniform(rng, -40, 40))});
    }
    for (std::size_t i = 0; i < extra; ++i) {
        stations.push_back(
            {uniform(rng, -100, 500), uniform(rng, -100, 500), uniform(rng, 0, 300)});
    }
    return stations;
}

Outcome criterion_trilateration() {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();

    SplitMix64 rng(0xacce9701);
    std::size_t worst_case = 0;
    double worst_error = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const auto stations = random_station_set(rng, rng.next() % 3);
        const Position3D truth{uniform(rng, -50, 450), uniform(rng, -50, 450),
                               uniform(rng, 10, 400)};
        std::vector<SphereConstraint> constraints;
        for (std::size_t s = 0; s < stations.size(); ++s) {
            constraints.push_back({stations[s], euclidean_distance(stations[s], truth),
                                   "GS" + std::to_string(s + 1)});
        }
        const double error = euclidean_distance(locate(constraints).position, truth);
        if (error > worst_error) {
            worst_error = error;
            worst_case = i;
        }
    }
    if (worst_error > 1e-6) {
        outcome.fail("round trip " + std::to_string(worst_case) + " missed by " +
                     fmt(worst_error, 12) + " m");
    }

    // Coplanar worked example: radii 150 on the 200 m square meet at (100,100,50).
    const std::vector<Position3D> square = {{0, 0, 0}, {200, 0, 0}, {0, 200, 0}, {200, 200, 0}};
    std::vector<SphereConstraint> coplanar;
    for (std::size_t i = 0; i < 4; ++i)
        coplanar.push_back({square[i], 150.0, "GS" + std::to_string(i + 1)});
    const LocateOutcome worked = locate(coplanar);
    if (worked.position.x != 100.0 || worked.position.y != 100.0 || worked.position.z != 50.0) {
        outcome.fail("coplanar example returned (" + fmt(worked.position.x, 9) + ", " +
                     fmt(worked.position.y, 9) + ", " + fmt(worked.position.z, 9) + ")");
    }

    // Underestimated radii cannot meet above the plane.
    std::vector<SphereConstraint> tight;
    for (std::size_t i = 0; i < 4; ++i)
        tight.push_back({square[i], 100.0, "GS" + std::to_string(i + 1)});
    bool imaginary = false;
    try {
        locate(tight);
    } catch (const ImaginaryHeightError&) {
        imaginary = true;
    }
    if (!imaginary) outcome.fail("underestimated radii did not raise the height failure");

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    if (elapsed.count() > 5.0) outcome.fail("took " + fmt(elapsed.count(), 2) + " s (> 5 s)");
    if (outcome.pass) {
        outcome.detail = "1000 round trips exact to " + fmt(worst_error, 12) +
                         " m, worked example exact, height failure raised, " +
                         fmt(elapsed.count(), 2) + " s";
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// 7. End-to-end pipeline: exact recovery with zero noise, anchored variance
//    with the published noise profile.

Outcome criterion_pipeline() {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();

    Scenario scenario;
    scenario.stations = {{"GS1", {0, 0, 0}, 0.0},
                         {"GS2", {200, 0, 0}, 0.0},
                         {"GS3", {0, 200, 0}, 0.0},
                         {"GS4", {100, 100, 120}, 0.0}};
    scenario.waypoints = {{{50, 80, 60}, 10.0}, {{150, 120, 90}, 10.0}, {{80, 30, 140}, 10.0}};
    scenario.truth_model = {1.165, -56.134};
    scenario.noise = {{{1.0, 0.0}}, {}};
    scenario.schedule = {2.0, 5};
    scenario.seed = 2024;
    scenario.uav_id = {"FF1"};

    const auto streams = simulate(scenario);
    std::vector<StationReport> reports;
    for (const auto& stream : streams) {
        std::vector<RssiSample> samples;
        for (const auto& emitted : stream.samples) samples.push_back(emitted.sample);
        for (auto& r : window_reports(samples, scenario.schedule.window_size))
            reports.push_back(std::move(r));
    }
    reports = merge_reports(std::move(reports));

    StationRegistry registry;
    for (const auto& st : scenario.stations) registry.add(st.id, st.position);
    Collector collector(std::move(registry), scenario.truth_model);
    std::vector<FixRecord> fixes;
    for (const auto& r : reports) {
        if (auto fix = collector.ingest(r)) fixes.push_back(std::move(*fix));
    }

    if (fixes.size() != scenario.waypoints.size()) {
        outcome.fail("expected " + std::to_string(scenario.waypoints.size()) + " fixes, got " +
                     std::to_string(fixes.size()));
    } else {
        for (std::size_t i = 0; i < fixes.size(); ++i) {
            if (!fixes[i].outcome) {
                outcome.fail("fix " + std::to_string(i) + " failed: " + fixes[i].failure);
                continue;
            }
            const double error =
                euclidean_distance(fixes[i].outcome->position, scenario.waypoints[i].position);
            if (error > 1e-6)
                outcome.fail("waypoint " + std::to_string(i) + " missed by " + fmt(error, 9));
        }
    }

    // Variance check: 10^4 samples at slant distance 102.97 m with the
    // published noise anchors; sample variance must land within 10% of 4.78.
    Scenario noisy;
    noisy.stations = {{"GS1", {0, 0, 0}, 0.0}};
    noisy.waypoints = {{{102.97, 0, 0}, 2.0 * 10000.0}};
    noisy.truth_model = {1.165, -56.134};
    noisy.noise = {{{102.97, 2.19},
                    {199.19, 1.53},
                    {298.19, 1.62},
                    {398.15, 1.21},
                    {498.34, 1.14},
                    {598.29, 1.10}},
                   {}};
    noisy.schedule = {2.0, 5};
    noisy.seed = 77;
    noisy.uav_id = {"FF1"};

    const auto noisy_stream = simulate(noisy)[0];
    if (noisy_stream.samples.size() != 10000) {
        outcome.fail("expected 10000 noisy samples, got " +
                     std::to_string(noisy_stream.samples.size()));
    } else {
        double sum = 0.0;
        for (const auto& e : noisy_stream.samples) sum += e.sample.rssi_db;
        const double mean = sum / 10000.0;
        double ss = 0.0;
        for (const auto& e : noisy_stream.samples) {
            const double d = e.sample.rssi_db - mean;
            ss += d * d;
        }
        const double variance = ss / 9999.0;
        if (std::abs(variance - 4.78) > 0.478) {
            outcome.fail("sample variance " + fmt(variance, 4) + " outside 4.78 +/- 10%");
        } else if (outcome.pass) {
            outcome.detail = "all waypoints recovered to 1e-6 m; variance " + fmt(variance, 3) +
                             " vs 4.78";
        }
    }

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    if (elapsed.count() > 30.0) outcome.fail("took " + fmt(elapsed.count(), 2) + " s (> 30 s)");
    return outcome;
}

// ---------------------------------------------------------------------------
// 8. Remote-ID codec round trip.

Outcome criterion_codec() {
    Outcome outcome;
    SplitMix64 rng(0xacce9708);
    static const char hex_digits[] = "0123456789ABCDEF";
    static const char id_chars[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

    for (int i = 0; i < 1000; ++i) {
        std::string m1;
        m1 += hex_digits[rng.next() % 16];
        m1 += hex_digits[rng.next() % 16];
        m1 += ' ';
        m1 += hex_digits[rng.next() % 16];
        m1 += hex_digits[rng.next() % 16];
        const auto e1 = encode(UavId{m1}, MessageFormat::M1);
        if (e1.payload.size() != 2) outcome.fail("M1 payload not 2 bytes");
        if (decode(e1.payload, MessageFormat::M1).id != m1) outcome.fail("M1 round trip broke");

        std::string m2;
        for (int k = 0; k < 3; ++k)
            m2 += static_cast<char>(0x21 + rng.next() % (0x7e - 0x21));
        const auto e2 = encode(UavId{m2}, MessageFormat::M2);
        if (e2.payload.size() != 3) outcome.fail("M2 payload not 3 bytes");
        if (decode(e2.payload, MessageFormat::M2).id != m2) outcome.fail("M2 round trip broke");

        std::string m3;
        const std::size_t length = 1 + rng.next() % 16;
        for (std::size_t k = 0; k < length; ++k)
            m3 += id_chars[rng.next() % (sizeof(id_chars) - 1)];
        const auto e3 = encode(UavId{m3}, MessageFormat::M3);
        if (e3.payload.size() != 61 + m3.size()) outcome.fail("M3 payload length wrong");
        if (decode(e3.payload, MessageFormat::M3).id != m3) outcome.fail("M3 round trip broke");

        if (!outcome.pass) break;
    }
    if (outcome.pass) outcome.detail = "1000 ids per format, payloads 2/3/61+len bytes";
    return outcome;
}

// ---------------------------------------------------------------------------
// 9. Byte-identical simulate runs.

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

Outcome criterion_determinism() {
    Outcome outcome;
    const fs::path base = fs::temp_directory_path() / "uavloc_acceptance_determinism";
    std::error_code ec;
    fs::remove_all(base, ec);
    fs::create_directories(base);

    const fs::path scenario_path = base / "scenario.json";
    {
        std::ofstream scenario(scenario_path, std::ios::binary);
        scenario << R"({
            "uav_id": "FF1",
            "seed": 31337,
            "loss_probability": 0.1,
            "truth_model": {"L": 1.165, "C": -56.134},
            "noise": {"anchors": [{"distance_m": 102.97, "std_dev_db": 2.19},
                                  {"distance_m": 598.29, "std_dev_db": 1.10}]},
            "stations": [
                {"id": "GS1", "x": 0, "y": 0, "z": 0},
                {"id": "GS2", "x": 200, "y": 0, "z": 0},
                {"id": "GS3", "x": 0, "y": 200, "z": 0},
                {"id": "GS4", "x": 100, "y": 100, "z": 120}
            ],
            "waypoints": [{"x": 50, "y": 80, "z": 60, "dwell_s": 30},
                          {"x": 150, "y": 120, "z": 90, "dwell_s": 30}]
        })";
    }

    std::ostringstream out, err;
    cli::GlobalOptions first;
    first.out_dir = (base / "a").string();
    cli::GlobalOptions second;
    second.out_dir = (base / "b").string();
    if (cli::cmd_simulate(scenario_path.string(), first, out, err) != 0 ||
        cli::cmd_simulate(scenario_path.string(), second, out, err) != 0) {
        outcome.fail("simulate command failed: " + err.str());
        return outcome;
    }
    for (const char* name : {"samples.csv", "reports.csv", "fixes.csv"}) {
        const std::string a = slurp(base / "a" / name);
        const std::string b = slurp(base / "b" / name);
        if (a.empty() || a != b) outcome.fail(std::string(name) + " differs between runs");
    }
    fs::remove_all(base, ec);
    if (outcome.pass) outcome.detail = "samples, reports and fixes byte-identical";
    return outcome;
}

}  // namespace

int main() {
    std::cout << "acceptance suite\n================\n";
    report(1, "slant-distance survey reproduction (tolerance 0.05 m)", criterion_slant_survey());
    report(2, "per-distance statistics (tolerance 0.01 dB)", criterion_statistics());
    report(3, "regression recovery with independent oracle", criterion_regression());
    report(4, "distance estimates and error percentages", criterion_distance_estimation());
    report(5, "confidence-interval overlap finding", criterion_ci_overlap());
    report(6, "trilateration property suite", criterion_trilateration());
    report(7, "end-to-end pipeline and anchored variance", criterion_pipeline());
    report(8, "remote-id codec round trip", criterion_codec());
    report(9, "simulate determinism", criterion_determinism());

    std::cout << "================\n";
    if (g_failures == 0) {
        std::cout << "all 9 criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
}

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uavloc/cli.hpp"

namespace {

std::optional<double> opt_value(const CLI::Option* option) {
    if (option->count() == 0) return std::nullopt;
    return option->as<double>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RSSI-based UAV localization toolkit: calibrate a path-loss model, "
                 "estimate distances, trilaterate positions, and simulate the whole "
                 "pipeline deterministically."};
    app.require_subcommand(1);
    // Global flags (--model/--seed/--out) may appear after the subcommand.
    app.fallthrough();

    uavloc::cli::GlobalOptions opts;
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value,
                                    "Override the scenario seed (simulate only)");
    app.add_option("--model", opts.model_path, "Path-loss model file (L=..., C=...)");
    app.add_option("--out", opts.out_dir, "Directory for output artifacts")
        ->default_val(".");

    // fit
    std::string calibration_csv;
    auto* fit = app.add_subcommand("fit", "Fit a path-loss model from a calibration CSV");
    fit->add_option("calibration_csv", calibration_csv,
                    "CSV with header distance_m,mean_rssi_db")
        ->required();

    // predict
    double predict_distance = 0.0;
    auto* predict = app.add_subcommand("predict", "Predict RSSI at a distance");
    predict->add_option("-d,--distance", predict_distance, "Distance in meters")->required();

    // distance
    double distance_rssi = 0.0;
    auto* distance = app.add_subcommand("distance", "Estimate distance from a mean RSSI");
    distance->add_option("-r,--rssi", distance_rssi, "Mean RSSI in dB")->required();

    // slant
    double slant_gd = 0.0, slant_h = 0.0;
    auto* slant = app.add_subcommand("slant", "Slant distance from ground distance, "
                                              "height and an angle");
    slant->add_option("--gd", slant_gd, "Ground distance in meters")->required();
    slant->add_option("--height", slant_h, "UAV height in meters")->required();
    auto* beta_opt = slant->add_option("--beta", "UAV-GS angle in degrees");
    auto* alpha_opt = slant->add_option("--alpha", "GP-GS angle in degrees");

    // locate
    std::string stations_csv, reports_csv;
    auto* locate = app.add_subcommand("locate", "Batch localization from a station "
                                                "registry and a report log");
    locate->add_option("stations_csv", stations_csv, "CSV station_id,x_m,y_m,z_m")->required();
    locate->add_option("reports_csv", reports_csv, "Report log, one report per line")
        ->required();

    // simulate
    std::string scenario_path;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario end to end "
                                                    "(samples, reports, fixes)");
    simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    // replay-paper
    std::string replay_which;
    auto* replay = app.add_subcommand("replay-paper", "Recompute a published reference "
                                                      "table and diff it cell by cell");
    replay->add_option("which", replay_which, "table2, table3, table5 or fig6")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return uavloc::cli::kExitUsageError;
    }

    if (seed_opt->count() > 0) opts.seed = seed_value;

    if (fit->parsed()) return uavloc::cli::cmd_fit(calibration_csv, opts, std::cout, std::cerr);
    if (predict->parsed())
        return uavloc::cli::cmd_predict(predict_distance, opts, std::cout, std::cerr);
    if (distance->parsed())
        return uavloc::cli::cmd_distance(distance_rssi, opts, std::cout, std::cerr);
    if (slant->parsed())
        return uavloc::cli::cmd_slant(slant_gd, slant_h, opt_value(beta_opt),
                                      opt_value(alpha_opt), opts, std::cout, std::cerr);
    if (locate->parsed())
        return uavloc::cli::cmd_locate(stations_csv, reports_csv, opts, std::cout, std::cerr);
    if (simulate->parsed())
        return uavloc::cli::cmd_simulate(scenario_path, opts, std::cout, std::cerr);
    if (replay->parsed())
        return uavloc::cli::cmd_replay(replay_which, opts, std::cout, std::cerr);

    return uavloc::cli::kExitUsageError;
}

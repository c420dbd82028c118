// sensewall: detection performance and SNR walls for cooperative spectrum
// sensing with generalized energy detectors under noise uncertainty.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sensewall/commands.hpp"
#include "sensewall/wall.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_sim_overrides) {
    cmd->add_option("--config", args.config_path, "experiment JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_path, "CSV output path (default: config output.path, else stdout)");
    if (with_sim_overrides) {
        cmd->add_option("--seed", args.seed, "override sim.seed");
        cmd->add_option("--trials", args.trials, "override sim.trials")->check(CLI::PositiveNumber);
    }
}

sensewall::ExperimentConfig load(const CommonArgs& args) {
    auto config = sensewall::load_experiment_config(args.config_path);
    if (args.seed) config.sim.seed = *args.seed;
    if (args.trials) config.sim.trials = *args.trials;
    if (!args.out_path.empty()) config.output.path = args.out_path;
    return config;
}

// Runs a CSV-producing command with the output routed per config/flags.
template <class Fn>
int with_csv_sink(const sensewall::ExperimentConfig& config, Fn&& fn) {
    if (config.output.path.empty()) {
        return fn(std::cout, std::cerr);  // CSV on stdout, report out of band
    }
    std::ofstream out(config.output.path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << config.output.path << "\n";
        return sensewall::kExitConfig;
    }
    return fn(out, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analytic detection performance, SNR walls, and Monte Carlo validation\n"
                 "for cooperative spectrum sensing with generalized energy detectors"};
    app.require_subcommand(1);

    CommonArgs wall_args, sweep_args, roc_args, validate_args;
    CLI::App* wall = app.add_subcommand("wall", "SNR walls for the configured fusion rule");
    add_common(wall, wall_args, false);
    CLI::App* sweep = app.add_subcommand("sweep", "analytic qf/qd over the lambda grid (CSV)");
    add_common(sweep, sweep_args, false);
    CLI::App* roc = app.add_subcommand("roc", "analytic and Monte Carlo ROC rows (CSV)");
    add_common(roc, roc_args, true);
    CLI::App* validate =
        app.add_subcommand("validate", "run the analytic-vs-simulation self checks");
    add_common(validate, validate_args, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (wall->parsed()) {
            return sensewall::cmd_wall(load(wall_args), std::cout);
        }
        if (sweep->parsed()) {
            const auto config = load(sweep_args);
            return with_csv_sink(config, [&](std::ostream& csv, std::ostream& report) {
                return sensewall::cmd_sweep(config, csv, report);
            });
        }
        if (roc->parsed()) {
            const auto config = load(roc_args);
            return with_csv_sink(config, [&](std::ostream& csv, std::ostream& report) {
                return sensewall::cmd_roc(config, csv, report);
            });
        }
        if (validate->parsed()) {
            return sensewall::cmd_validate(load(validate_args), std::cout);
        }
    } catch (const sensewall::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return sensewall::kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return sensewall::kExitConfig;
    } catch (const sensewall::ConvergenceError& e) {
        std::cerr << "numeric convergence error: " << e.what() << "\n";
        return sensewall::kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

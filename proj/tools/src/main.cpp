#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qcm/errors.hpp"

int main(int argc, char** argv) {
    using namespace qcm::cli;

    CLI::App app{"Concurrence monotones, convex roofs, and entanglement "
                 "distribution protocols"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "base RNG seed (default 0)");
    app.add_option("--tol", cfg.tol, "comparison tolerance (default 1e-9)");
    app.add_option("--restarts", cfg.restarts, "optimizer restarts (default 32)");
    app.add_option("--log-base", cfg.log_base, "entropy logarithm base (default 2)");
    app.add_option("--trials", cfg.trials, "trial count override");
    app.add_option("--output", cfg.output,
                   "write the JSON report to this file instead of stdout");

    std::string state_path;
    std::string path_name = "auto";
    std::string scenario_path;
    std::string spectra_path;
    std::string roof_state_path;
    std::string monotone = "g";
    double target = 0.0;

    CLI::App* mono_cmd =
        app.add_subcommand("monotones", "report the full monotone family, "
                                        "G-concurrence, and entropy of a pure state");
    mono_cmd->add_option("--state", state_path, "state JSON file")->required();
    mono_cmd->add_option("--path", path_name,
                         "computation route: schmidt | compound | power-sum | auto");

    CLI::App* red_cmd = app.add_subcommand(
        "red", "replay an entanglement distribution scenario and check the "
               "average-G ceiling");
    red_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();

    CLI::App* rpbes_cmd = app.add_subcommand(
        "rpbes", "run the phase-tuned swapping protocol on two Schmidt spectra");
    rpbes_cmd->add_option("--spectra", spectra_path, "spectra JSON file")->required();
    CLI::Option* target_opt = rpbes_cmd->add_option(
        "--target", target, "design phases that land the final G here");

    CLI::App* roof_cmd = app.add_subcommand(
        "roof", "estimate the convex-roof extension of a monotone on a mixed state");
    roof_cmd->add_option("--state", roof_state_path, "state JSON file")->required();
    roof_cmd->add_option("--monotone", monotone, "g or c<k> (default g)");

    CLI::App* selftest_cmd = app.add_subcommand(
        "selftest", "randomized internal consistency checks (exit 1 on violation)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mono_cmd->parsed())
            return cmd_monotones(cfg, state_path, path_name);
        if (red_cmd->parsed())
            return cmd_red(cfg, scenario_path);
        if (rpbes_cmd->parsed())
            return cmd_rpbes(cfg, spectra_path, target, target_opt->count() > 0);
        if (roof_cmd->parsed())
            return cmd_roof(cfg, roof_state_path, monotone);
        if (selftest_cmd->parsed())
            return cmd_selftest(cfg);
        std::cerr << "no subcommand selected\n";
        return kExitValidation;
    } catch (const qcm::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const qcm::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

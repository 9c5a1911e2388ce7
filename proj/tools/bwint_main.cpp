// bwint: Birkhoff weak integrals, measure audits, and inequality checks for
// non-additive set functions on the naturals, driven by JSON configs.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "birkhoff/cli.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out = "-";
    birkhoff::cli::Overrides overrides;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "path to the JSON config")->required();
    cmd->add_option("--out", flags.out, "report path ('-' for stdout)");
    cmd->add_option("--seed", flags.overrides.seed, "override run.seed");
    cmd->add_option("--tol", flags.overrides.tolerance, "override run.tolerance");
    cmd->add_option("--stages", flags.overrides.stages, "override run.stages");
    cmd->add_option("--samples", flags.overrides.samples, "override run.samples_per_stage");
    cmd->add_option("--horizon", flags.overrides.horizon, "override run.horizon");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff weak integral estimator and inequality verifier"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string check_name, sweep_name;

    CLI::App* all = app.add_subcommand("all", "run every item in the config");
    CLI::App* audit = app.add_subcommand("audit", "run measure property audits");
    CLI::App* integrate = app.add_subcommand("integrate", "run weak-integral items");
    CLI::App* norm = app.add_subcommand("norm", "run p-norm items");
    CLI::App* check = app.add_subcommand("check", "run inequality check items");
    CLI::App* sweep = app.add_subcommand("sweep", "run inequality sweep items");
    check->add_option("name", check_name, "checker name filter");
    sweep->add_option("name", sweep_name, "checker name filter");
    for (CLI::App* cmd : {all, audit, integrate, norm, check, sweep}) {
        add_common(cmd, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    std::string command, filter;
    if (all->parsed()) command = "all";
    if (audit->parsed()) command = "audit";
    if (integrate->parsed()) command = "integrate";
    if (norm->parsed()) command = "norm";
    if (check->parsed()) {
        command = "check";
        filter = check_name;
    }
    if (sweep->parsed()) {
        command = "sweep";
        filter = sweep_name;
    }

    return birkhoff::cli::run_command(command, filter, flags.config, flags.out, flags.overrides);
}

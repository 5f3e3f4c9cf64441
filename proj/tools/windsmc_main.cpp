#include <CLI11.hpp>

#include <iostream>

#include "cli_commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"windsmc - variable-speed wind turbine speed-control simulator"};
    app.require_subcommand(1);

    windsmc::cli::CommonOpts run_opts;
    auto* run = app.add_subcommand("run", "run one scenario and write record.csv + metrics.txt");
    run->add_option("--scenario", run_opts.scenario_paths, "scenario file")->required();
    run->add_option("--out", run_opts.out_dir, "output directory (default: out)");
    run->add_option("--set", run_opts.sets, "override scenario key, key=value");
    run->add_option("--seed", run_opts.seed, "override sim.seed");

    windsmc::cli::CommonOpts cmp_opts;
    auto* cmp = app.add_subcommand("compare", "run two scenarios (candidate, baseline) and "
                                              "print paired metrics with improvements");
    cmp->add_option("--scenario", cmp_opts.scenario_paths, "two scenario files")->required();
    cmp->add_option("--out", cmp_opts.out_dir, "also write compare.txt here");
    cmp->add_option("--set", cmp_opts.sets, "override applied to both scenarios");
    cmp->add_option("--seed", cmp_opts.seed, "override sim.seed in both scenarios");

    windsmc::cli::CommonOpts sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "run several scenarios concurrently");
    sweep->add_option("--scenario", sweep_opts.scenario_paths, "scenario files")->required();
    sweep->add_option("--out", sweep_opts.out_dir, "output base directory");
    sweep->add_option("--set", sweep_opts.sets, "override applied to every scenario");
    sweep->add_option("--seed", sweep_opts.seed, "override sim.seed everywhere");

    windsmc::cli::CpSurfaceOpts cp_opts;
    auto* cp = app.add_subcommand("cp-surface", "tabulate the power-coefficient surface");
    std::string cp_scenario;
    cp->add_option("--scenario", cp_scenario, "scenario supplying the plant section");
    cp->add_option("--out", cp_opts.out_dir, "output directory");
    cp->add_option("--set", cp_opts.sets, "override scenario key, key=value");
    cp->add_option("--lambda-min", cp_opts.lambda_min, "grid start (default 1)");
    cp->add_option("--lambda-max", cp_opts.lambda_max, "grid end (default 12)");
    cp->add_option("--lambda-step", cp_opts.lambda_step, "grid step (default 1e-3)");
    cp->add_option("--beta-min", cp_opts.beta_min, "pitch grid start, deg (default 0)");
    cp->add_option("--beta-max", cp_opts.beta_max, "pitch grid end, deg (default 0)");
    cp->add_option("--beta-step", cp_opts.beta_step, "pitch grid step, deg (default 1)");

    windsmc::cli::WindGenOpts wind_opts;
    auto* wind = app.add_subcommand("wind-gen", "generate a seeded synthetic wind CSV");
    wind->add_option("--mean", wind_opts.mean, "mean speed, m/s (default 8)");
    wind->add_option("--turbulence", wind_opts.turbulence_intensity,
                     "std(v)/mean (default 0.12)");
    wind->add_option("--duration", wind_opts.duration, "profile length, s (default 600)");
    wind->add_option("--dt", wind_opts.dt, "sample interval, s (default 2e-4)");
    wind->add_option("--seed", wind_opts.seed, "generator seed (default 42)");
    wind->add_option("--out", wind_opts.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return windsmc::cli::cmd_run(run_opts, std::cout, std::cerr);
    if (cmp->parsed()) return windsmc::cli::cmd_compare(cmp_opts, std::cout, std::cerr);
    if (sweep->parsed()) return windsmc::cli::cmd_sweep(sweep_opts, std::cout, std::cerr);
    if (cp->parsed()) {
        if (!cp_scenario.empty()) cp_opts.scenario_path = cp_scenario;
        return windsmc::cli::cmd_cp_surface(cp_opts, std::cout, std::cerr);
    }
    if (wind->parsed()) return windsmc::cli::cmd_wind_gen(wind_opts, std::cout, std::cerr);
    return 1;
}

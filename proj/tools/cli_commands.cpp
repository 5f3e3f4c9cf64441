#include "cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace windsmc::cli {

namespace fs = std::filesystem;

std::vector<ScenarioOverride> to_overrides(const std::vector<std::string>& sets) {
    std::vector<ScenarioOverride> overrides;
    overrides.reserve(sets.size());
    for (const auto& s : sets) overrides.push_back(parse_override(s));
    return overrides;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int classify(const std::exception& ex, std::ostream& err) {
    err << "error: " << ex.what() << '\n';
    return dynamic_cast<const SimulationError*>(&ex) ? 2 : 1;
}

struct RunArtifacts {
    RunResult result;
    fs::path record_path;
    fs::path metrics_path;
};

RunArtifacts run_to_dir(const Scenario& scenario, const fs::path& dir) {
    fs::create_directories(dir);
    RunArtifacts art;
    art.result = run_scenario(scenario);
    art.record_path = dir / "record.csv";
    art.metrics_path = dir / "metrics.txt";
    art.result.record.save_csv(art.record_path);
    write_metrics(art.result.metrics, art.result.monitors, art.metrics_path);
    return art;
}

} // namespace

void write_metrics(const RunMetrics& metrics, const MonitorStats& monitors,
                   const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IngestError("cannot open " + path.string() + " for writing");
    out << "mse_speed = " << fmt(metrics.mse_speed) << '\n'
        << "mse_lambda = " << fmt(metrics.mse_lambda) << '\n'
        << "torque_std = " << fmt(metrics.torque_std) << '\n'
        << "energy_efficiency = " << fmt(metrics.energy_efficiency) << '\n'
        << "min_stability_margin = " << fmt(monitors.min_stability_margin) << '\n';
}

int cmd_run(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.scenario_paths.size() != 1)
            throw ConfigError("run expects exactly one --scenario");
        const Scenario scenario =
            parse_scenario(opts.scenario_paths[0], to_overrides(opts.sets), opts.seed);
        const fs::path dir = opts.out_dir.empty() ? fs::path("out") : fs::path(opts.out_dir);
        const RunArtifacts art = run_to_dir(scenario, dir);
        out << "wrote " << art.record_path.string() << " (" << art.result.record.size()
            << " rows)\n";
        out << "wrote " << art.metrics_path.string() << '\n';
        out << "mse_speed = " << fmt(art.result.metrics.mse_speed) << '\n';
        out << "energy_efficiency = " << fmt(art.result.metrics.energy_efficiency) << '\n';
        return 0;
    } catch (const std::exception& ex) {
        return classify(ex, err);
    }
}

int cmd_compare(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.scenario_paths.size() != 2)
            throw ConfigError("compare expects two --scenario files (candidate, baseline)");
        const auto overrides = to_overrides(opts.sets);
        const Scenario a = parse_scenario(opts.scenario_paths[0], overrides, opts.seed);
        const Scenario b = parse_scenario(opts.scenario_paths[1], overrides, opts.seed);
        const ComparisonSummary cmp = compare_runs(a, b);

        std::ostringstream table;
        table << std::left << std::setw(22) << "metric" << std::setw(18) << cmp.name_a
              << cmp.name_b << '\n';
        auto row = [&](const char* name, double va, double vb) {
            table << std::left << std::setw(22) << name << std::setw(18) << fmt(va)
                  << fmt(vb) << '\n';
        };
        row("mse_speed", cmp.a.mse_speed, cmp.b.mse_speed);
        row("mse_lambda", cmp.a.mse_lambda, cmp.b.mse_lambda);
        row("torque_std", cmp.a.torque_std, cmp.b.torque_std);
        row("energy_efficiency", cmp.a.energy_efficiency, cmp.b.energy_efficiency);
        char pct[64];
        std::snprintf(pct, sizeof pct, "speed-MSE improvement: %.1f%%\n",
                      cmp.speed_mse_improvement_pct);
        table << pct;
        std::snprintf(pct, sizeof pct, "lambda-MSE improvement: %.1f%%\n",
                      cmp.lambda_mse_improvement_pct);
        table << pct;

        out << table.str();
        if (!opts.out_dir.empty()) {
            fs::create_directories(opts.out_dir);
            std::ofstream file(fs::path(opts.out_dir) / "compare.txt");
            file << table.str();
        }
        return 0;
    } catch (const std::exception& ex) {
        return classify(ex, err);
    }
}

int cmd_sweep(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.scenario_paths.empty())
            throw ConfigError("sweep expects at least one --scenario");
        const fs::path base = opts.out_dir.empty() ? fs::path("out") : fs::path(opts.out_dir);
        const auto overrides = to_overrides(opts.sets);

        struct Job {
            std::string path;
            fs::path dir;
            std::future<RunMetrics> metrics;
        };
        std::vector<Job> jobs;
        for (const auto& path : opts.scenario_paths) {
            const fs::path dir = base / fs::path(path).stem();
            jobs.push_back({path, dir, {}});
        }
        for (auto& job : jobs) {
            job.metrics = std::async(std::launch::async, [&, path = job.path, dir = job.dir] {
                const Scenario scenario = parse_scenario(path, overrides, opts.seed);
                return run_to_dir(scenario, dir).result.metrics;
            });
        }
        int failures = 0;
        for (auto& job : jobs) {
            try {
                const RunMetrics m = job.metrics.get();
                out << job.path << ": mse_speed=" << fmt(m.mse_speed)
                    << " energy=" << fmt(m.energy_efficiency) << " -> " << job.dir.string()
                    << '\n';
            } catch (const std::exception& ex) {
                err << job.path << ": error: " << ex.what() << '\n';
                ++failures;
            }
        }
        return failures == 0 ? 0 : 2;
    } catch (const std::exception& ex) {
        return classify(ex, err);
    }
}

int cmd_cp_surface(const CpSurfaceOpts& opts, std::ostream& out, std::ostream& err) {
    try {
        TurbineParams params;
        if (opts.scenario_path) {
            params = parse_scenario(*opts.scenario_path, to_overrides(opts.sets)).params;
        }
        if (!(opts.lambda_step > 0.0) || !(opts.beta_step > 0.0))
            throw ConfigError("cp-surface: grid steps must be > 0");
        if (opts.lambda_max < opts.lambda_min || opts.beta_max < opts.beta_min)
            throw ConfigError("cp-surface: grid bounds must be ordered");

        const fs::path dir = opts.out_dir.empty() ? fs::path("out") : fs::path(opts.out_dir);
        fs::create_directories(dir);
        const fs::path csv_path = dir / "cp_surface.csv";
        std::ofstream csv(csv_path);
        if (!csv)
            throw IngestError("cannot open " + csv_path.string() + " for writing");
        csv << "lambda,beta,cp\n";

        std::size_t warnings = 0;
        double best_cp = -1.0;
        double best_lambda = 0.0;
        double best_beta = 0.0;
        const auto n_lambda = static_cast<std::size_t>(
            (opts.lambda_max - opts.lambda_min) / opts.lambda_step + 1e-9);
        const auto n_beta =
            static_cast<std::size_t>((opts.beta_max - opts.beta_min) / opts.beta_step + 1e-9);
        char buf[96];
        for (std::size_t j = 0; j <= n_beta; ++j) {
            const double beta = opts.beta_min + static_cast<double>(j) * opts.beta_step;
            for (std::size_t i = 0; i <= n_lambda; ++i) {
                const double lambda =
                    opts.lambda_min + static_cast<double>(i) * opts.lambda_step;
                try {
                    const double cp = power_coefficient(lambda, beta, params);
                    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", lambda, beta, cp);
                    csv << buf;
                    if (cp > best_cp) {
                        best_cp = cp;
                        best_lambda = lambda;
                        best_beta = beta;
                    }
                } catch (const SingularityError&) {
                    std::snprintf(buf, sizeof buf, "%.9g,%.9g,\n", lambda, beta);
                    csv << buf;
                    ++warnings;
                }
            }
        }
        out << "wrote " << csv_path.string() << '\n';
        out << "argmax: lambda=" << fmt(best_lambda) << " beta=" << fmt(best_beta)
            << " cp=" << fmt(best_cp) << '\n';
        if (warnings > 0)
            out << "warning: " << warnings << " singular grid points left empty\n";
        return 0;
    } catch (const std::exception& ex) {
        return classify(ex, err);
    }
}

int cmd_wind_gen(const WindGenOpts& opts, std::ostream& out, std::ostream& err) {
    try {
        const WindProfile profile = generate_wind(opts.mean, opts.turbulence_intensity,
                                                  opts.duration, opts.dt, opts.seed);
        const fs::path dir = opts.out_dir.empty() ? fs::path("out") : fs::path(opts.out_dir);
        fs::create_directories(dir);
        const fs::path path = dir / "wind.csv";
        save_wind(profile, path);
        out << "wrote " << path.string() << " (" << profile.size() << " samples)\n";
        return 0;
    } catch (const std::exception& ex) {
        return classify(ex, err);
    }
}

std::vector<CpSurfaceRow> load_cp_surface(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("load_cp_surface: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "lambda,beta,cp")
        throw IngestError("load_cp_surface: unexpected header");
    std::vector<CpSurfaceRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw IngestError("load_cp_surface: malformed row on line " +
                              std::to_string(line_no));
        CpSurfaceRow row;
        row.lambda = std::stod(line.substr(0, c1));
        row.beta = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const std::string cp_text = line.substr(c2 + 1);
        if (!cp_text.empty()) row.cp = std::stod(cp_text);
        rows.push_back(row);
    }
    return rows;
}

} // namespace windsmc::cli

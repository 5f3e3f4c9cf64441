// Grid search for the PID baseline gains: minimizes speed-tracking MSE on a
// fixed seeded wind scenario. Maintenance tool; the winning gains are frozen
// into scenarios/pid_8ms.scenario.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <vector>

#include "windsmc/scenario.hpp"

namespace {

struct Candidate {
    double kp, ki, kd;
    double mse = 0.0;
    double torque_std = 0.0;
    double energy = 0.0;
    bool failed = false;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"windsmc-pid-tune - grid search for the PID baseline"};
    std::string scenario_path;
    double dt = 1e-3;
    std::size_t workers = 8;
    app.add_option("--scenario", scenario_path, "base scenario (controller forced to pid)")
        ->required();
    app.add_option("--dt", dt, "search-time step (default 1e-3)");
    app.add_option("--workers", workers, "parallel evaluations");
    CLI11_PARSE(app, argc, argv);

    windsmc::Scenario base;
    try {
        base = windsmc::parse_scenario(scenario_path,
                                       {{"controller.type", "pid"},
                                        {"pid.kp", "1"},
                                        {"pid.ki", "0"},
                                        {"pid.kd", "0"}});
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    base.dt = dt;
    base.wind_cfg.sample_dt = -1.0;
    windsmc::resolve_wind(base);

    const std::vector<double> kp_grid = {1, 1.8, 3.2, 5.6, 10, 18, 32, 50};
    const std::vector<double> ki_grid = {0, 0.6, 1.1, 2, 3.5, 6.3, 11, 20};
    const std::vector<double> kd_grid = {0, 0.1, 0.3, 1, 3, 5};

    std::vector<Candidate> grid;
    for (double kp : kp_grid)
        for (double ki : ki_grid)
            for (double kd : kd_grid) grid.push_back({kp, ki, kd});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            windsmc::Scenario sc = base;
            sc.pid.kp = grid[i].kp;
            sc.pid.ki = grid[i].ki;
            sc.pid.kd = grid[i].kd;
            try {
                const auto result = windsmc::run_scenario(sc);
                grid[i].mse = result.metrics.mse_speed;
                grid[i].torque_std = result.metrics.torque_std;
                grid[i].energy = result.metrics.energy_efficiency;
            } catch (const std::exception&) {
                grid[i].failed = true;
            }
        }
    };
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();

    std::sort(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) {
        if (a.failed != b.failed) return !a.failed;
        return a.mse < b.mse;
    });
    std::printf("%8s %8s %8s %14s %12s %10s\n", "kp", "ki", "kd", "mse_speed", "torque_std",
                "energy");
    for (std::size_t i = 0; i < std::min<std::size_t>(grid.size(), 12); ++i) {
        const Candidate& c = grid[i];
        if (c.failed)
            std::printf("%8g %8g %8g %14s\n", c.kp, c.ki, c.kd, "failed");
        else
            std::printf("%8g %8g %8g %14.6g %12.5g %10.5f\n", c.kp, c.ki, c.kd, c.mse,
                        c.torque_std, c.energy);
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "windsmc/scenario.hpp"

namespace windsmc::cli {

struct CommonOpts {
    std::vector<std::string> scenario_paths;
    std::string out_dir;
    std::vector<std::string> sets; // key=value overrides
    std::optional<std::uint64_t> seed;
};

struct CpSurfaceOpts {
    std::optional<std::string> scenario_path; // plant section source; defaults otherwise
    std::string out_dir;
    std::vector<std::string> sets;
    double lambda_min = 1.0;
    double lambda_max = 12.0;
    double lambda_step = 1e-3;
    double beta_min = 0.0;
    double beta_max = 0.0;
    double beta_step = 1.0;
};

struct WindGenOpts {
    double mean = 8.0;
    double turbulence_intensity = 0.12;
    double duration = 600.0;
    double dt = 0.0002;
    std::uint64_t seed = 42;
    std::string out_dir;
};

// Exit codes: 0 success, 1 configuration/usage error, 2 runtime monitor abort.
int cmd_run(const CommonOpts& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const CommonOpts& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOpts& opts, std::ostream& out, std::ostream& err);
int cmd_cp_surface(const CpSurfaceOpts& opts, std::ostream& out, std::ostream& err);
int cmd_wind_gen(const WindGenOpts& opts, std::ostream& out, std::ostream& err);

// Shared helpers (exposed for tests).
std::vector<ScenarioOverride> to_overrides(const std::vector<std::string>& sets);
void write_metrics(const RunMetrics& metrics, const MonitorStats& monitors,
                   const std::filesystem::path& path);

struct CpSurfaceRow {
    double lambda = 0.0;
    double beta = 0.0;
    std::optional<double> cp; // empty when the point was singular
};
std::vector<CpSurfaceRow> load_cp_surface(const std::filesystem::path& path);

} // namespace windsmc::cli

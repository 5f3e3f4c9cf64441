#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>

#include "windsmc/afdo.hpp"
#include "windsmc/control.hpp"
#include "windsmc/wind.hpp"

namespace windsmc {

// One classic RK4 step of x_dot = f(x) with step h.
template <typename Derivative>
double rk4_step(Derivative&& f, double x, double h) {
    const double k1 = f(x);
    const double k2 = f(x + 0.5 * h * k1);
    const double k3 = f(x + 0.5 * h * k2);
    const double k4 = f(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

enum class ControllerKind { smc_afdo, smc_plain, pid };
enum class IntegrationScheme { rk4, euler };

struct Disturbance {
    enum class Kind { none, constant, sinusoid, step };
    Kind kind = Kind::none;
    double d0 = 0.0;     // magnitude, N*m (constant/step)
    double amp = 0.0;    // sinusoid amplitude, N*m
    double period = 1.0; // sinusoid period, s
    double t_on = 0.0;   // step onset, s

    double value_at(double t) const;
    bool operator==(const Disturbance&) const = default;
};

struct WindConfig {
    enum class Kind { synthetic, file };
    Kind kind = Kind::synthetic;
    double mean = 8.0;
    double turbulence_intensity = 0.12;
    double duration = -1.0;   // < 0: follow sim.t_end
    double sample_dt = -1.0;  // < 0: follow sim.dt
    std::string path;         // kind == file

    bool operator==(const WindConfig&) const = default;
};

struct AfdoConfig {
    FuzzyBasisConfig basis;
    double sigma = 5.0;
    double gamma_bar = 50.0;
    double epsilon_bound = 0.01; // used only by the zeta-condition monitor
};

struct Scenario {
    TurbineParams params;
    WindConfig wind_cfg;
    std::shared_ptr<const WindProfile> wind; // resolved from wind_cfg
    ControllerKind controller = ControllerKind::smc_afdo;
    SmcConfig smc;
    PidConfig pid;
    AfdoConfig afdo;
    double tau_f = 0.05; // reference / error-derivative filter constant, s
    Disturbance disturbance;
    IntegrationScheme integration = IntegrationScheme::rk4;
    double t_end = 600.0;
    double dt = 1e-3;
    double omega0 = 30.0;
    std::uint64_t seed = 42;

    void validate() const;
    std::size_t step_count() const; // floor(t_end/dt)
};

// Builds (or loads) the wind profile named by wind_cfg and stores it on the
// scenario. Synthetic profiles use the scenario seed.
void resolve_wind(Scenario& scenario);

// Changes the seed and regenerates a synthetic profile.
void reseed(Scenario& scenario, std::uint64_t seed);

struct SimState {
    PlantState plant;
    ReferenceState ref;
    FilteredDifferentiator err_diff;   // e -> e_dot
    FilteredDifferentiator omega_diff; // omega -> observer's omega_dot input
    PidState pid;
    AfdoState afdo;
    double tau_gen = 0.0;
    double d = 0.0;

    static SimState initial(const Scenario& scenario);
};

// Channels computed while producing the torque for the step at state.t.
struct StepOutputs {
    double v_wind = 0.0;
    double omega_rot = 0.0;
    double omega_ref = 0.0;
    double e = 0.0;
    double e_dot = 0.0;
    double s = 0.0;
    double tau_gen = 0.0;
    double tau_aero = 0.0;
    double d = 0.0;
    double d_hat = 0.0;
    double zeta = 0.0;
    double lambda = 0.0;
    double cp = 0.0;
    double p_gen = 0.0;
    double p_aero_opt = 0.0;
    double stability_margin = 0.0;
    bool zeta_cond = false;
};

// Evaluates one control step at state.plant.t and advances the state by dt:
// wind lookup -> reference -> filtered derivatives -> controller branch ->
// observer/adaptation (forward Euler) -> plant integration (RK4 by default,
// inputs held constant across the step).
StepOutputs integrate_step(SimState& state, const Scenario& scenario, double dt);

// Column-oriented per-step log. Row k corresponds to t = k*dt and reflects
// the inputs applied over [t, t+dt).
struct RunRecord {
    std::vector<double> t, v_wind, omega_ref, omega_rot, e, s, tau_gen, tau_aero,
        d, d_hat, zeta, lambda, cp, p_gen, p_aero_opt, stability_margin;
    std::vector<std::uint8_t> zeta_cond;

    static constexpr const char* csv_header =
        "t,v_wind,omega_ref,omega_rot,e,s,tau_gen,tau_aero,d,d_hat,zeta,lambda,cp,"
        "p_gen,p_aero_opt,stability_margin,zeta_cond";

    std::size_t size() const { return t.size(); }
    void reserve(std::size_t n);
    void save_csv(const std::filesystem::path& path) const; // 9 significant digits
    static RunRecord load_csv(const std::filesystem::path& path);
};

struct RunMetrics {
    double mse_speed = 0.0;        // (rad/s)^2
    double mse_lambda = 0.0;       // dimensionless^2
    double torque_std = 0.0;       // N*m, population (divisor N)
    double energy_efficiency = 0.0;
    double settle_time = 0.0;      // s; first time |e| stays inside the settle band
};

// Streaming health counters maintained by run_scenario.
struct MonitorStats {
    double min_stability_margin = 0.0;      // over t >= 5 s (whole run if shorter)
    double v1_increase_fraction = 0.0;      // steps outside |s| <= width where s^2/2 grew
    double max_abs_d_hat_late = 0.0;        // max |d_hat| over t >= 10 s
    double reach_time = 0.0;                // first t after which |s| <= 10*width holds
    double max_theta_norm = 0.0;
};

struct RunResult {
    RunRecord record;
    RunMetrics metrics;
    MonitorStats monitors;
};

// Full closed-loop execution. Deterministic given the scenario (seed
// included). Throws SimulationError when a state goes non-finite or
// ||theta_hat|| exceeds the divergence bound; the message names the monitor
// and the step index.
RunResult run_scenario(const Scenario& scenario);

// Mean of squares; DomainError on empty input.
double mse(std::span<const double> residuals);

// Population standard deviation (divisor N); DomainError for length < 2.
double std_dev(std::span<const double> series);

// Trapezoidal energy ratio: integral of p_gen over integral of p_aero_opt.
double energy_efficiency(const RunRecord& record);

struct ComparisonSummary {
    std::string name_a;
    std::string name_b;
    RunMetrics a; // candidate
    RunMetrics b; // baseline
    double speed_mse_improvement_pct = 0.0;  // (mse_b - mse_a)/mse_b * 100
    double lambda_mse_improvement_pct = 0.0;
};

// Runs both scenarios and pairs the metrics. The environments (plant, wind,
// disturbance, horizon, start speed, seed) must match; only the controller
// branch may differ. Throws ComparisonError otherwise.
ComparisonSummary compare_runs(const Scenario& a, const Scenario& b);

const char* to_string(ControllerKind kind);

} // namespace windsmc

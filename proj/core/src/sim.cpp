#include "windsmc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>

namespace windsmc {

double Disturbance::value_at(double t) const {
    switch (kind) {
    case Kind::none: return 0.0;
    case Kind::constant: return d0;
    case Kind::sinusoid: return amp * std::sin(2.0 * std::numbers::pi * t / period);
    case Kind::step: return t >= t_on ? d0 : 0.0;
    }
    return 0.0;
}

void Scenario::validate() const {
    params.validate();
    if (!(dt > 0.0)) throw ConfigError("sim.dt must be > 0");
    if (!(t_end >= 10.0 * dt)) throw ConfigError("sim.t_end must be >= 10*sim.dt");
    if (!(omega0 > params.omega_floor))
        throw ConfigError("sim.omega0 must exceed plant.omega_floor");
    if (!(tau_f > 0.0)) throw ConfigError("controller.tau_f must be > 0");
    smc.validate();
    if (controller == ControllerKind::pid) pid.validate();
    if (controller == ControllerKind::smc_afdo) {
        afdo.basis.validate();
        if (!(afdo.sigma > 0.0)) throw ConfigError("afdo.sigma must be > 0");
        if (!(afdo.gamma_bar > 0.0)) throw ConfigError("afdo.gamma_bar must be > 0");
        if (!(afdo.epsilon_bound >= 0.0)) throw ConfigError("afdo.epsilon_bound must be >= 0");
    }
    switch (disturbance.kind) {
    case Disturbance::Kind::sinusoid:
        if (!(disturbance.period > 0.0))
            throw ConfigError("sim.disturbance_period must be > 0");
        break;
    case Disturbance::Kind::step:
        if (!(disturbance.t_on >= 0.0))
            throw ConfigError("sim.disturbance_t_on must be >= 0");
        break;
    default: break;
    }
    if (wind_cfg.kind == WindConfig::Kind::synthetic) {
        if (!(wind_cfg.mean > 0.0)) throw ConfigError("wind.mean must be > 0");
        if (!(wind_cfg.turbulence_intensity >= 0.0 && wind_cfg.turbulence_intensity < 0.5))
            throw ConfigError("wind.turbulence_intensity must lie in [0, 0.5)");
        if (wind_cfg.duration >= 0.0 && wind_cfg.duration < t_end)
            throw ConfigError("wind.duration must cover sim.t_end");
    } else if (wind_cfg.path.empty()) {
        throw ConfigError("wind.path is required when wind.kind = file");
    }
}

std::size_t Scenario::step_count() const {
    return static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
}

void resolve_wind(Scenario& scenario) {
    if (scenario.wind_cfg.kind == WindConfig::Kind::synthetic) {
        const double duration =
            scenario.wind_cfg.duration >= 0.0 ? scenario.wind_cfg.duration : scenario.t_end;
        const double sample_dt =
            scenario.wind_cfg.sample_dt > 0.0 ? scenario.wind_cfg.sample_dt : scenario.dt;
        scenario.wind = std::make_shared<WindProfile>(
            generate_wind(scenario.wind_cfg.mean, scenario.wind_cfg.turbulence_intensity,
                          duration, sample_dt, scenario.seed));
    } else {
        auto profile = std::make_shared<WindProfile>(load_wind(scenario.wind_cfg.path));
        if (profile->t.front() > 1e-9 || profile->t.back() < scenario.t_end - 1e-9)
            throw ConfigError("wind.path: profile does not cover [0, sim.t_end]");
        scenario.wind = std::move(profile);
    }
}

void reseed(Scenario& scenario, std::uint64_t seed) {
    scenario.seed = seed;
    if (scenario.wind_cfg.kind == WindConfig::Kind::synthetic || !scenario.wind)
        resolve_wind(scenario);
}

SimState SimState::initial(const Scenario& scenario) {
    SimState st;
    st.plant.omega_rot = scenario.omega0;
    st.plant.t = 0.0;
    st.afdo = AfdoState::initial(scenario.afdo.basis, scenario.omega0,
                                 scenario.afdo.sigma, scenario.afdo.gamma_bar);
    return st;
}

namespace {

StepOutputs evaluate_step(SimState& state, const Scenario& scenario, double dt, bool advance) {
    const TurbineParams& params = scenario.params;
    const double t = state.plant.t;
    const double omega = state.plant.omega_rot;

    StepOutputs out;
    out.v_wind = wind_at(*scenario.wind, t);
    out.omega_rot = omega;
    out.omega_ref = reference_speed(out.v_wind, params);
    filtered_derivative(out.omega_ref, state.ref, dt, scenario.tau_f);
    out.e = omega - out.omega_ref;
    out.e_dot = state.err_diff.step(out.e, dt, scenario.tau_f);
    const double omega_dot_meas = state.omega_diff.step(omega, dt, scenario.tau_f);
    out.s = sliding_variable(out.e, out.e_dot, scenario.smc);
    out.tau_aero = aerodynamic_torque(omega, out.v_wind, 0.0, params);
    out.d = scenario.disturbance.value_at(t);

    thread_local std::vector<double> psi;
    const bool observer_on = scenario.controller == ControllerKind::smc_afdo;
    if (observer_on) {
        fuzzy_basis(omega, omega_dot_meas, scenario.afdo.basis, psi);
        out.d_hat = disturbance_estimate(state.afdo.theta_hat, psi);
    }

    switch (scenario.controller) {
    case ControllerKind::smc_afdo:
    case ControllerKind::smc_plain: {
        const SmcInputs in{out.tau_aero, omega, state.ref.omega_ref_dot,
                           out.e,        out.e_dot, out.d_hat};
        out.tau_gen = smc_torque(in, params, scenario.smc);
        break;
    }
    case ControllerKind::pid:
        out.tau_gen = pid_torque(out.e, state.pid, dt, scenario.pid);
        break;
    }

    if (observer_on) {
        state.afdo = observer_step(std::move(state.afdo), omega, out.tau_aero,
                                   out.tau_gen, out.d_hat, params, dt);
        out.zeta = state.afdo.zeta;
        state.afdo = adapt_theta(std::move(state.afdo), psi, dt);
    }

    out.lambda = tip_speed_ratio(omega, out.v_wind, params);
    out.cp = power_coefficient(out.lambda, 0.0, params);
    out.p_gen = out.tau_gen * omega;
    out.p_aero_opt = 0.5 * params.rho * std::numbers::pi * params.radius * params.radius *
                     params.cp_opt * out.v_wind * out.v_wind * out.v_wind;
    out.stability_margin = stability_margin(out.d_hat - out.d, params, scenario.smc);
    out.zeta_cond = zeta_condition(out.zeta, scenario.afdo.epsilon_bound, scenario.afdo.sigma);

    state.tau_gen = out.tau_gen;
    state.d = out.d;

    if (advance) {
        auto f = [&](double w) {
            const double ta = aerodynamic_torque(w, out.v_wind, 0.0, params);
            return (ta - params.b_total * w - out.tau_gen - out.d) / params.j_total;
        };
        if (scenario.integration == IntegrationScheme::rk4)
            state.plant.omega_rot = rk4_step(f, omega, dt);
        else
            state.plant.omega_rot = omega + dt * f(omega);
        state.plant.t += dt;
    }
    return out;
}

double theta_norm(const std::vector<double>& theta) {
    double s = 0.0;
    for (double x : theta) s += x * x;
    return std::sqrt(s);
}

} // namespace

StepOutputs integrate_step(SimState& state, const Scenario& scenario, double dt) {
    return evaluate_step(state, scenario, dt, true);
}

void RunRecord::reserve(std::size_t n) {
    for (auto* col : {&t, &v_wind, &omega_ref, &omega_rot, &e, &s, &tau_gen, &tau_aero, &d,
                      &d_hat, &zeta, &lambda, &cp, &p_gen, &p_aero_opt, &stability_margin})
        col->reserve(n);
    zeta_cond.reserve(n);
}

RunResult run_scenario(const Scenario& scenario) {
    if (!scenario.wind) {
        Scenario resolved = scenario;
        resolve_wind(resolved);
        return run_scenario(resolved);
    }
    scenario.validate();

    const std::size_t n = scenario.step_count();
    const double dt = scenario.dt;
    const double width = scenario.smc.tanh_width;

    RunResult result;
    RunRecord& rec = result.record;
    rec.reserve(n + 1);

    SimState state = SimState::initial(scenario);

    MonitorStats& mon = result.monitors;
    mon.min_stability_margin = std::numeric_limits<double>::infinity();
    const double margin_from = std::min(5.0, scenario.t_end);
    const double d_hat_from = 10.0;
    double reach_candidate = -1.0;
    std::size_t v1_outside = 0;
    std::size_t v1_increase = 0;
    double prev_s = 0.0;

    for (std::size_t k = 0; k <= n; ++k) {
        state.plant.t = static_cast<double>(k) * dt;
        const bool last = k == n;
        const StepOutputs out = evaluate_step(state, scenario, dt, !last);

        rec.t.push_back(static_cast<double>(k) * dt);
        rec.v_wind.push_back(out.v_wind);
        rec.omega_ref.push_back(out.omega_ref);
        rec.omega_rot.push_back(out.omega_rot);
        rec.e.push_back(out.e);
        rec.s.push_back(out.s);
        rec.tau_gen.push_back(out.tau_gen);
        rec.tau_aero.push_back(out.tau_aero);
        rec.d.push_back(out.d);
        rec.d_hat.push_back(out.d_hat);
        rec.zeta.push_back(out.zeta);
        rec.lambda.push_back(out.lambda);
        rec.cp.push_back(out.cp);
        rec.p_gen.push_back(out.p_gen);
        rec.p_aero_opt.push_back(out.p_aero_opt);
        rec.stability_margin.push_back(out.stability_margin);
        rec.zeta_cond.push_back(out.zeta_cond ? 1 : 0);

        const double t_now = rec.t.back();
        if (t_now >= margin_from)
            mon.min_stability_margin = std::min(mon.min_stability_margin, out.stability_margin);
        if (t_now >= d_hat_from)
            mon.max_abs_d_hat_late = std::max(mon.max_abs_d_hat_late, std::abs(out.d_hat));
        if (k > 0 && std::abs(prev_s) > width) {
            ++v1_outside;
            if (out.s * out.s > prev_s * prev_s * (1.0 + 1e-12)) ++v1_increase;
        }
        prev_s = out.s;
        if (std::abs(out.s) <= 10.0 * width) {
            if (reach_candidate < 0.0) reach_candidate = t_now;
        } else {
            reach_candidate = -1.0;
        }

        if (!last) {
            if (!std::isfinite(state.plant.omega_rot) || !std::isfinite(state.afdo.z))
                throw SimulationError("integration blowup monitor tripped at step " +
                                      std::to_string(k) + ": non-finite state");
            const double tn = theta_norm(state.afdo.theta_hat);
            mon.max_theta_norm = std::max(mon.max_theta_norm, tn);
            if (tn > 1e3)
                throw SimulationError("theta divergence monitor tripped at step " +
                                      std::to_string(k) +
                                      ": ||theta_hat|| = " + std::to_string(tn));
        }
    }

    mon.v1_increase_fraction =
        v1_outside == 0 ? 0.0 : static_cast<double>(v1_increase) / static_cast<double>(v1_outside);
    mon.reach_time = reach_candidate < 0.0 ? scenario.t_end : reach_candidate;
    if (!std::isfinite(mon.min_stability_margin))
        mon.min_stability_margin = rec.stability_margin.empty() ? 0.0 : rec.stability_margin.back();

    RunMetrics& m = result.metrics;
    m.mse_speed = mse(rec.e);
    std::vector<double> lambda_err(rec.lambda.size());
    for (std::size_t i = 0; i < lambda_err.size(); ++i)
        lambda_err[i] = rec.lambda[i] - scenario.params.lambda_opt;
    m.mse_lambda = mse(lambda_err);
    m.torque_std = std_dev(rec.tau_gen);
    m.energy_efficiency = energy_efficiency(rec);

    double ref_mean = 0.0;
    for (double w : rec.omega_ref) ref_mean += std::abs(w);
    ref_mean /= static_cast<double>(rec.size());
    const double band = std::max(0.01 * ref_mean, 0.1);
    double settle = -1.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (std::abs(rec.e[i]) <= band) {
            if (settle < 0.0) settle = rec.t[i];
        } else {
            settle = -1.0;
        }
    }
    m.settle_time = settle < 0.0 ? scenario.t_end : settle;
    return result;
}

double mse(std::span<const double> residuals) {
    if (residuals.empty()) throw DomainError("mse: empty series");
    double s = 0.0;
    for (double r : residuals) s += r * r;
    return s / static_cast<double>(residuals.size());
}

double std_dev(std::span<const double> series) {
    if (series.size() < 2) throw DomainError("std_dev: need at least 2 samples");
    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= static_cast<double>(series.size());
    double s = 0.0;
    for (double x : series) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(series.size()));
}

double energy_efficiency(const RunRecord& record) {
    if (record.size() < 2)
        throw DomainError("energy_efficiency: record too short");
    double e_gen = 0.0;
    double e_opt = 0.0;
    for (std::size_t i = 1; i < record.size(); ++i) {
        const double h = record.t[i] - record.t[i - 1];
        e_gen += 0.5 * h * (record.p_gen[i] + record.p_gen[i - 1]);
        e_opt += 0.5 * h * (record.p_aero_opt[i] + record.p_aero_opt[i - 1]);
    }
    if (!(e_opt > 0.0))
        throw DomainError("energy_efficiency: zero available aerodynamic energy");
    return e_gen / e_opt;
}

void RunRecord::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out)
        throw IngestError("save_csv: cannot open " + path.string() + " for writing");
    out << csv_header << '\n';
    char buf[512];
    for (std::size_t i = 0; i < size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,"
                      "%.9g,%.9g,%.9g,%u\n",
                      t[i], v_wind[i], omega_ref[i], omega_rot[i], e[i], s[i], tau_gen[i],
                      tau_aero[i], d[i], d_hat[i], zeta[i], lambda[i], cp[i], p_gen[i],
                      p_aero_opt[i], stability_margin[i], static_cast<unsigned>(zeta_cond[i]));
        out << buf;
    }
}

RunRecord RunRecord::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("load_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw IngestError("load_csv: empty file " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header)
        throw IngestError("load_csv: unexpected header in " + path.string());

    RunRecord rec;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double cols[16];
        unsigned cond = 0;
        const int got = std::sscanf(
            line.c_str(),
            "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%u", &cols[0],
            &cols[1], &cols[2], &cols[3], &cols[4], &cols[5], &cols[6], &cols[7], &cols[8],
            &cols[9], &cols[10], &cols[11], &cols[12], &cols[13], &cols[14], &cols[15], &cond);
        if (got != 17)
            throw IngestError("load_csv: malformed row on line " + std::to_string(line_no));
        rec.t.push_back(cols[0]);
        rec.v_wind.push_back(cols[1]);
        rec.omega_ref.push_back(cols[2]);
        rec.omega_rot.push_back(cols[3]);
        rec.e.push_back(cols[4]);
        rec.s.push_back(cols[5]);
        rec.tau_gen.push_back(cols[6]);
        rec.tau_aero.push_back(cols[7]);
        rec.d.push_back(cols[8]);
        rec.d_hat.push_back(cols[9]);
        rec.zeta.push_back(cols[10]);
        rec.lambda.push_back(cols[11]);
        rec.cp.push_back(cols[12]);
        rec.p_gen.push_back(cols[13]);
        rec.p_aero_opt.push_back(cols[14]);
        rec.stability_margin.push_back(cols[15]);
        rec.zeta_cond.push_back(static_cast<std::uint8_t>(cond));
    }
    return rec;
}

ComparisonSummary compare_runs(const Scenario& a, const Scenario& b) {
    const bool env_matches = a.params == b.params && a.wind_cfg == b.wind_cfg &&
                             a.disturbance == b.disturbance && a.t_end == b.t_end &&
                             a.dt == b.dt && a.omega0 == b.omega0 && a.seed == b.seed;
    if (!env_matches)
        throw ComparisonError(
            "compare: scenarios must share plant, wind, disturbance, horizon, and seed");

    ComparisonSummary cmp;
    cmp.name_a = to_string(a.controller);
    cmp.name_b = to_string(b.controller);
    cmp.a = run_scenario(a).metrics;
    cmp.b = run_scenario(b).metrics;
    auto improvement = [](double candidate, double baseline) {
        return baseline != 0.0 ? (baseline - candidate) / baseline * 100.0 : 0.0;
    };
    cmp.speed_mse_improvement_pct = improvement(cmp.a.mse_speed, cmp.b.mse_speed);
    cmp.lambda_mse_improvement_pct = improvement(cmp.a.mse_lambda, cmp.b.mse_lambda);
    return cmp;
}

const char* to_string(ControllerKind kind) {
    switch (kind) {
    case ControllerKind::smc_afdo: return "smc_afdo";
    case ControllerKind::smc_plain: return "smc_plain";
    case ControllerKind::pid: return "pid";
    }
    return "?";
}

} // namespace windsmc

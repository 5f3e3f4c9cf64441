#include "windsmc/control.hpp"

#include <algorithm>
#include <cmath>

namespace windsmc {

double FilteredDifferentiator::step(double x, double dt, double tau) {
    if (!primed) {
        prev = x;
        primed = true;
    }
    const double raw = (x - prev) / dt;
    prev = x;
    const double blend = std::min(dt / tau, 1.0);
    value += blend * (raw - value);
    return value;
}

void SmcConfig::validate() const {
    if (!(k_p > 0.0)) throw ConfigError("smc.k_p must be > 0");
    if (!(k_i > 0.0)) throw ConfigError("smc.k_i must be > 0");
    if (!(k1 > 0.0)) throw ConfigError("smc.k1 must be > 0");
    if (!(k2 > 0.0)) throw ConfigError("smc.k2 must be > 0");
    if (!(tanh_width > 0.0)) throw ConfigError("smc.tanh_width must be > 0");
    if (torque_limit && !(*torque_limit > 0.0))
        throw ConfigError("smc.torque_limit must be > 0 when set");
}

void PidConfig::validate() const {
    if (kp < 0.0 || ki < 0.0 || kd < 0.0)
        throw ConfigError("pid gains must be >= 0");
    if (kp == 0.0 && ki == 0.0 && kd == 0.0)
        throw ConfigError("pid gains must not all be zero");
    if (!(derivative_filter_tau > 0.0))
        throw ConfigError("pid.derivative_filter_tau must be > 0");
    if (torque_limit && !(*torque_limit > 0.0))
        throw ConfigError("pid.torque_limit must be > 0 when set");
}

double reference_speed(double v_wind, const TurbineParams& params) {
    if (!(v_wind > 0.0))
        throw DomainError("reference_speed: wind speed must be > 0");
    return params.lambda_opt * v_wind / params.radius;
}

double filtered_derivative(double signal_now, ReferenceState& state, double dt, double tau_f) {
    if (!(dt > 0.0) || !(tau_f > 0.0))
        throw DomainError("filtered_derivative: dt and tau_f must be > 0");
    state.omega_ref = signal_now;
    state.omega_ref_dot = state.filter.step(signal_now, dt, tau_f);
    return state.omega_ref_dot;
}

double sliding_variable(double e, double e_dot, const SmcConfig& cfg) {
    return cfg.k_p * e_dot + cfg.k_i * e;
}

double equivalent_control(const SmcInputs& in, const TurbineParams& params,
                          const SmcConfig& cfg) {
    return in.tau_aero - params.b_total * in.omega_rot -
           params.j_total * in.omega_ref_dot +
           (params.j_total * cfg.k_i / cfg.k_p) * in.e - in.d_hat;
}

double switching_control(double s, const TurbineParams& params, const SmcConfig& cfg) {
    return (params.j_total / cfg.k_p) *
           (cfg.k1 * s + cfg.k2 * std::tanh(s / cfg.tanh_width));
}

double smc_torque(const SmcInputs& in, const TurbineParams& params, const SmcConfig& cfg) {
    const double s = sliding_variable(in.e, in.e_dot, cfg);
    double tau = equivalent_control(in, params, cfg) + switching_control(s, params, cfg);
    if (cfg.torque_limit)
        tau = std::clamp(tau, -*cfg.torque_limit, *cfg.torque_limit);
    return tau;
}

double stability_margin(double d_tilde, const TurbineParams& params, const SmcConfig& cfg) {
    return params.j_total * cfg.k2 / cfg.k_p - std::abs(d_tilde);
}

double pid_torque(double e, PidState& state, double dt, const PidConfig& cfg) {
    if (!(dt > 0.0))
        throw DomainError("pid_torque: dt must be > 0");
    if (!state.primed) {
        state.prev_e = e;
        state.primed = true;
    }
    const double increment = 0.5 * (e + state.prev_e) * dt;
    const double raw_de = (e - state.prev_e) / dt;
    state.prev_e = e;
    const double blend = std::min(dt / cfg.derivative_filter_tau, 1.0);
    state.deriv += blend * (raw_de - state.deriv);

    state.integral += increment;
    double u = cfg.kp * e + cfg.ki * state.integral + cfg.kd * state.deriv;
    if (cfg.torque_limit) {
        const double limit = *cfg.torque_limit;
        if (u > limit || u < -limit) {
            // Anti-windup: drop the integration step that pushed us deeper
            // into saturation.
            if ((u > limit && increment > 0.0) || (u < -limit && increment < 0.0)) {
                state.integral -= increment;
                u = cfg.kp * e + cfg.ki * state.integral + cfg.kd * state.deriv;
            }
            u = std::clamp(u, -limit, limit);
        }
    }
    return u;
}

} // namespace windsmc

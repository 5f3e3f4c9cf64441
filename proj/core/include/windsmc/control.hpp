#pragma once

#include <optional>

#include "windsmc/plant.hpp"

namespace windsmc {

// Backward difference followed by a first-order low pass:
//   y += min(dt/tau, 1) * (dx/dt - y)
// The first sample primes the memory, so the initial derivative is 0.
struct FilteredDifferentiator {
    double prev = 0.0;
    double value = 0.0;
    bool primed = false;

    double step(double x, double dt, double tau);
    void reset() { *this = FilteredDifferentiator{}; }
};

struct SmcConfig {
    double k_p = 1.0;        // proportional surface gain
    double k_i = 5.0;        // integral surface gain
    double k1 = 20.0;        // linear reaching gain, 1/s
    double k2 = 8.0;         // switching gain
    double tanh_width = 1e-3; // boundary-layer width of the smoothed signum
    std::optional<double> torque_limit; // max |tau_gen|, N*m

    void validate() const;
};

struct PidConfig {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double derivative_filter_tau = 0.02; // s
    std::optional<double> torque_limit;

    void validate() const;
};

struct ReferenceState {
    double omega_ref = 0.0;     // rad/s
    double omega_ref_dot = 0.0; // rad/s^2, filtered
    FilteredDifferentiator filter;
};

struct TrackingError {
    double e = 0.0;     // omega_rot - omega_ref, rad/s
    double e_dot = 0.0; // filtered, rad/s^2
    double s = 0.0;     // k_p*e_dot + k_i*e
};

struct PidState {
    double integral = 0.0;
    double prev_e = 0.0;
    double deriv = 0.0; // filtered error derivative
    bool primed = false;
};

// omega_ref = lambda_opt * v / R
double reference_speed(double v_wind, const TurbineParams& params);

// Advances the reference filter with the new sample and returns the filtered
// derivative (also stored in state.omega_ref_dot).
double filtered_derivative(double signal_now, ReferenceState& state, double dt, double tau_f);

double sliding_variable(double e, double e_dot, const SmcConfig& cfg);

struct SmcInputs {
    double tau_aero = 0.0;
    double omega_rot = 0.0;
    double omega_ref_dot = 0.0;
    double e = 0.0;
    double e_dot = 0.0;
    double d_hat = 0.0;
};

// Model-cancelling component that keeps the state on s = 0:
//   u_eq = tau_aero - Bt*omega - Jt*omega_ref_dot + (Jt*k_i/k_p)*e - d_hat
// d_hat enters with a minus so a converged estimate cancels the lumped
// disturbance in the rotor dynamics instead of doubling it.
double equivalent_control(const SmcInputs& in, const TurbineParams& params,
                          const SmcConfig& cfg);

// u_sw = (Jt/k_p) * (k1*s + k2*tanh(s/width)); odd in s.
double switching_control(double s, const TurbineParams& params, const SmcConfig& cfg);

// u_eq + u_sw, clamped to +-torque_limit when configured.
double smc_torque(const SmcInputs& in, const TurbineParams& params, const SmcConfig& cfg);

// Jt*k2/k_p - |d_tilde|; positive means the switching gain dominates the
// current disturbance-estimation error.
double stability_margin(double d_tilde, const TurbineParams& params, const SmcConfig& cfg);

// Parallel PID with trapezoidal integral, first-order-filtered derivative,
// and conditional anti-windup against the torque limit.
double pid_torque(double e, PidState& state, double dt, const PidConfig& cfg);

} // namespace windsmc

#pragma once

#include <vector>

#include "windsmc/plant.hpp"

namespace windsmc {

// Gaussian membership grid over [omega_rot, omega_rot_dot]. The basis vector
// has dimension p = m_omega * m_omega_dot (one entry per rule pair) and is
// normalized to sum to 1.
struct FuzzyBasisConfig {
    std::vector<double> centers_omega;      // strictly increasing, rad/s
    std::vector<double> widths_omega;       // > 0
    std::vector<double> centers_omega_dot;  // strictly increasing, rad/s^2
    std::vector<double> widths_omega_dot;   // > 0

    // m memberships per input, centers uniform over the span, width equal to
    // the center spacing.
    static FuzzyBasisConfig make_uniform(std::size_t m, double omega_lo, double omega_hi,
                                         double omega_dot_lo, double omega_dot_hi);

    std::size_t p() const { return centers_omega.size() * centers_omega_dot.size(); }
    void validate() const;
};

// Observer state of the adaptive fuzzy disturbance estimator.
struct AfdoState {
    std::vector<double> theta_hat; // adaptive weights, length p, N*m scale
    double z = 0.0;                // observer state, rad/s
    double zeta = 0.0;             // omega_rot - z, refreshed each step
    double sigma = 5.0;            // observer gain, 1/s
    double gamma_bar = 50.0;       // adaptation rate gamma/Jt

    static AfdoState initial(const FuzzyBasisConfig& basis, double omega0,
                             double sigma, double gamma_bar);
};

// Normalized basis vector at (omega, omega_dot). Entries are >= 0 and sum to
// 1; evaluation is shift-stabilized so far-off-grid inputs cannot underflow
// the normalizing sum to zero.
std::vector<double> fuzzy_basis(double omega, double omega_dot, const FuzzyBasisConfig& cfg);
void fuzzy_basis(double omega, double omega_dot, const FuzzyBasisConfig& cfg,
                 std::vector<double>& out);

// d_hat = theta_hat . psi
double disturbance_estimate(const std::vector<double>& theta_hat,
                            const std::vector<double>& psi);

// Refreshes zeta = omega_rot - z and advances z one forward-Euler step of
//   z_dot = sigma*zeta + (tau_aero - Bt*omega - tau_gen - d_hat)/Jt
// which gives the estimation-error dynamics
//   zeta_dot = -sigma*zeta + (d_hat - d)/Jt.
AfdoState observer_step(AfdoState state, double omega_rot, double tau_aero,
                        double tau_gen, double d_hat, const TurbineParams& params,
                        double dt);

// Adaptive law theta_hat_dot = -gamma_bar * zeta * psi (the direction that
// makes V2 = s^2/2 + zeta^2/2 + theta_tilde'theta_tilde/(2*gamma) decrease).
// No projection; the simulator monitors ||theta_hat|| instead.
AfdoState adapt_theta(AfdoState state, const std::vector<double>& psi, double dt);

// zeta^2 >= epsilon_bound^2 / sigma^2 — the instant-wise condition under
// which the observer Lyapunov term is decreasing. Logged, never enforced.
bool zeta_condition(double zeta, double epsilon_bound, double sigma);

} // namespace windsmc

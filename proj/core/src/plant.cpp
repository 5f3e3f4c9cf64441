#include "windsmc/plant.hpp"

#include <cmath>
#include <numbers>

namespace windsmc {

void TurbineParams::validate() const {
    if (!(rho > 0.0)) throw ConfigError("plant.rho must be > 0");
    if (!(radius > 0.0)) throw ConfigError("plant.radius must be > 0");
    if (!(j_total > 0.0)) throw ConfigError("plant.j_total must be > 0");
    if (!(b_total >= 0.0)) throw ConfigError("plant.b_total must be >= 0");
    if (!(omega_floor > 0.0)) throw ConfigError("plant.omega_floor must be > 0");
    if (!(lambda_opt > 0.0)) throw ConfigError("plant.lambda_opt must be > 0");
    if (!(cp_opt > 0.0 && cp_opt <= 0.593))
        throw ConfigError("plant.cp_opt must lie in (0, 0.593] (Betz bound)");
}

void TwoMassParams::validate() const {
    if (!(eta > 0.0)) throw ConfigError("two-mass eta must be > 0");
    if (!(j_rot > 0.0) || !(j_gen > 0.0))
        throw ConfigError("two-mass inertias must be > 0");
    if (!(b_rot >= 0.0) || !(b_gen >= 0.0))
        throw ConfigError("two-mass dampings must be >= 0");
}

double tip_speed_ratio(double omega_rot, double v_wind, const TurbineParams& params) {
    if (!(v_wind > 0.0))
        throw DomainError("tip_speed_ratio: wind speed must be > 0");
    return omega_rot * params.radius / v_wind;
}

double cp_phi(double lambda, double beta) {
    const double b2 = beta * beta;
    const double b3 = b2 * beta;
    const double num = b3 + 6e-6 * beta - 3e-3 * lambda + 1.0;
    const double den = -0.02 * b2 * b2 + lambda * b3 - 0.02 * beta + lambda;
    const double scale = std::max({1.0, std::abs(lambda), std::abs(b3)});
    if (std::abs(den) < 1e-12 * scale)
        throw SingularityError("power_coefficient: phi denominator is singular");
    return num / den;
}

double power_coefficient(double lambda, double beta, const TurbineParams& params) {
    if (beta < 0.0)
        throw DomainError("power_coefficient: beta < 0 with non-integer exponent");
    const double phi = cp_phi(lambda, beta);
    // exp() underflows long before mu1*phi can matter; avoid inf*0.
    if (params.mu[4] * phi > 700.0) return 0.0;
    const double beta_term = (beta == 0.0) ? 0.0 : params.mu[2] * std::pow(beta, params.mu_exponent);
    const double cp = (params.mu[0] * phi - params.mu[1] * beta - beta_term - params.mu[3]) *
                      std::exp(-params.mu[4] * phi);
    return cp > 0.0 ? cp : 0.0;
}

double aerodynamic_power(double omega_rot, double v_wind, double beta,
                         const TurbineParams& params) {
    const double lambda = tip_speed_ratio(omega_rot, v_wind, params);
    const double cp = power_coefficient(lambda, beta, params);
    const double r2 = params.radius * params.radius;
    return 0.5 * params.rho * std::numbers::pi * r2 * cp * v_wind * v_wind * v_wind;
}

double aerodynamic_torque(double omega_rot, double v_wind, double beta,
                          const TurbineParams& params) {
    const double p = aerodynamic_power(omega_rot, v_wind, beta, params);
    return p / std::max(omega_rot, params.omega_floor);
}

double rotor_derivative(const PlantState& state, double tau_aero, double tau_gen,
                        double d, const TurbineParams& params) {
    return (tau_aero - params.b_total * state.omega_rot - tau_gen - d) / params.j_total;
}

CpOptimum find_cp_optimum(const TurbineParams& params, double beta,
                          double lambda_lo, double lambda_hi, double step) {
    CpOptimum best;
    best.cp_star = -1.0;
    const auto n = static_cast<std::size_t>((lambda_hi - lambda_lo) / step + 1e-9);
    for (std::size_t k = 0; k <= n; ++k) {
        const double lambda = lambda_lo + static_cast<double>(k) * step;
        double cp;
        try {
            cp = power_coefficient(lambda, beta, params);
        } catch (const SingularityError&) {
            continue;
        }
        if (cp > best.cp_star) {
            best.cp_star = cp;
            best.lambda_star = lambda;
        }
    }
    if (best.cp_star < 0.0)
        throw DomainError("find_cp_optimum: the whole grid was singular");
    return best;
}

} // namespace windsmc

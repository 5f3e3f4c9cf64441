#pragma once

#include <array>
#include <cstddef>

#include "windsmc/errors.hpp"

namespace windsmc {

// Physical constants of the one-mass turbine model.
//
// Conventions:
// - omega is the rotor (low-speed side) angular speed, rad/s.
// - tau_gen is the commanded generator torque reflected to the low-speed
//   side; positive torque decelerates the rotor.
// - beta (pitch) is in degrees and fixed at 0 for every shipped scenario.
struct TurbineParams {
    double rho = 1.29;         // air density, kg/m^3
    double radius = 1.26;      // rotor radius, m
    double j_total = 1.5;      // lumped inertia, kg*m^2
    double b_total = 0.0;      // lumped damping, N*m*s/rad
    double lambda_opt = 6.9;   // optimal tip-speed ratio
    double cp_opt = 0.44119937920329109; // max of the default Cp surface
    std::array<double, 5> mu = {110.23, 0.4234, 0.00146, 9.636, 18.4};
    double mu_exponent = 2.14; // exponent x on the beta term
    double omega_floor = 0.1;  // minimum speed used in the torque division, rad/s

    void validate() const;
};

// Two-mass drivetrain constants. Kept as a validation oracle for the
// reduction identities; the simulated plant is the one-mass model.
// Stiffness terms are carried but excluded from the reduced dynamics.
struct TwoMassParams {
    double j_rot = 0.0;  // rotor-side inertia, kg*m^2
    double j_gen = 0.0;  // generator-side inertia, kg*m^2
    double b_rot = 0.0;
    double b_gen = 0.0;
    double k_rot = 0.0;  // shaft stiffnesses, N*m/rad (not simulated)
    double k_gen = 0.0;
    double eta = 1.0;    // gearbox ratio

    void validate() const;
    double reduced_inertia() const { return j_rot + eta * eta * j_gen; }
    double reduced_damping() const { return b_rot + eta * eta * b_gen; }
};

struct PlantState {
    double omega_rot = 0.0; // rad/s
    double t = 0.0;         // s
};

// lambda = omega * R / v. Throws DomainError when v_wind <= 0.
double tip_speed_ratio(double omega_rot, double v_wind, const TurbineParams& params);

// Cp(lambda, beta) from the exponential mu-parameterization, clamped below
// at 0 (negative extractable power is unphysical in this operating region).
// Throws SingularityError when the phi denominator vanishes and DomainError
// for beta < 0 (non-integer exponent).
double power_coefficient(double lambda, double beta, const TurbineParams& params);

// phi(lambda, beta); exposed for surface diagnostics and tests.
double cp_phi(double lambda, double beta);

// Captured aerodynamic power, W.
double aerodynamic_power(double omega_rot, double v_wind, double beta,
                         const TurbineParams& params);

// tau = P / max(omega, omega_floor). lambda uses the un-floored omega.
double aerodynamic_torque(double omega_rot, double v_wind, double beta,
                          const TurbineParams& params);

// One-mass rotor dynamics:
//   omega_dot = (tau_aero - b_total*omega - tau_gen - d) / j_total
double rotor_derivative(const PlantState& state, double tau_aero, double tau_gen,
                        double d, const TurbineParams& params);

struct CpOptimum {
    double lambda_star = 0.0;
    double cp_star = 0.0;
};

// Brute-force scan of the Cp curve at fixed beta over [lambda_lo, lambda_hi].
CpOptimum find_cp_optimum(const TurbineParams& params, double beta = 0.0,
                          double lambda_lo = 1.0, double lambda_hi = 12.0,
                          double step = 1e-3);

} // namespace windsmc

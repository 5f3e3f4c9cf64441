#include "windsmc/afdo.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace windsmc {

FuzzyBasisConfig FuzzyBasisConfig::make_uniform(std::size_t m, double omega_lo,
                                                double omega_hi, double omega_dot_lo,
                                                double omega_dot_hi) {
    if (m < 1) throw ConfigError("afdo.m must be >= 1");
    FuzzyBasisConfig cfg;
    auto fill = [m](std::vector<double>& centers, std::vector<double>& widths,
                    double lo, double hi) {
        centers.resize(m);
        widths.resize(m);
        const double spacing = m > 1 ? (hi - lo) / static_cast<double>(m - 1) : (hi - lo);
        for (std::size_t i = 0; i < m; ++i) {
            centers[i] = m > 1 ? lo + static_cast<double>(i) * spacing : 0.5 * (lo + hi);
            widths[i] = spacing > 0.0 ? spacing : 1.0;
        }
    };
    fill(cfg.centers_omega, cfg.widths_omega, omega_lo, omega_hi);
    fill(cfg.centers_omega_dot, cfg.widths_omega_dot, omega_dot_lo, omega_dot_hi);
    return cfg;
}

void FuzzyBasisConfig::validate() const {
    auto check = [](const std::vector<double>& centers, const std::vector<double>& widths,
                    const char* what) {
        if (centers.size() < 2)
            throw ConfigError(std::string("afdo: need m >= 2 memberships for ") + what);
        if (centers.size() != widths.size())
            throw ConfigError(std::string("afdo: centers/widths mismatch for ") + what);
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (!(widths[i] > 0.0))
                throw ConfigError(std::string("afdo: widths must be > 0 for ") + what);
            if (i > 0 && !(centers[i] > centers[i - 1]))
                throw ConfigError(std::string("afdo: centers must be strictly increasing for ") +
                                  what);
        }
    };
    check(centers_omega, widths_omega, "omega");
    check(centers_omega_dot, widths_omega_dot, "omega_dot");
}

AfdoState AfdoState::initial(const FuzzyBasisConfig& basis, double omega0,
                             double sigma, double gamma_bar) {
    AfdoState st;
    st.theta_hat.assign(basis.p(), 0.0);
    st.z = omega0;
    st.zeta = 0.0;
    st.sigma = sigma;
    st.gamma_bar = gamma_bar;
    return st;
}

namespace {

// Log-domain Gaussian exponents minus the per-dimension minimum, so at least
// one membership per dimension evaluates to exp(0) = 1 and the normalizing
// sum never underflows, however far the input sits from the grid.
void shifted_memberships(double x, const std::vector<double>& centers,
                         const std::vector<double>& widths, std::vector<double>& out) {
    out.resize(centers.size());
    double min_q = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double zi = (x - centers[i]) / widths[i];
        out[i] = 0.5 * zi * zi;
        if (out[i] < min_q) min_q = out[i];
    }
    for (double& q : out) q = std::exp(-(q - min_q));
}

} // namespace

void fuzzy_basis(double omega, double omega_dot, const FuzzyBasisConfig& cfg,
                 std::vector<double>& out) {
    if (cfg.centers_omega.empty() || cfg.centers_omega_dot.empty())
        throw ConfigError("fuzzy_basis: empty membership grid");
    thread_local std::vector<double> mu_a;
    thread_local std::vector<double> mu_b;
    shifted_memberships(omega, cfg.centers_omega, cfg.widths_omega, mu_a);
    shifted_memberships(omega_dot, cfg.centers_omega_dot, cfg.widths_omega_dot, mu_b);

    out.resize(cfg.p());
    double sum = 0.0;
    std::size_t idx = 0;
    for (double a : mu_a)
        for (double b : mu_b) {
            out[idx] = a * b;
            sum += out[idx];
            ++idx;
        }
    if (!(sum > 0.0))
        throw DomainError("fuzzy_basis: degenerate input, all memberships vanished");
    for (double& p : out) p /= sum;
}

std::vector<double> fuzzy_basis(double omega, double omega_dot, const FuzzyBasisConfig& cfg) {
    std::vector<double> psi;
    fuzzy_basis(omega, omega_dot, cfg, psi);
    return psi;
}

double disturbance_estimate(const std::vector<double>& theta_hat,
                            const std::vector<double>& psi) {
    if (theta_hat.size() != psi.size())
        throw ConfigError("disturbance_estimate: theta_hat/psi length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) d += theta_hat[i] * psi[i];
    return d;
}

AfdoState observer_step(AfdoState state, double omega_rot, double tau_aero,
                        double tau_gen, double d_hat, const TurbineParams& params,
                        double dt) {
    if (!(dt > 0.0))
        throw DomainError("observer_step: dt must be > 0");
    state.zeta = omega_rot - state.z;
    const double z_dot = state.sigma * state.zeta +
                         (tau_aero - params.b_total * omega_rot - tau_gen - d_hat) /
                             params.j_total;
    state.z += dt * z_dot;
    return state;
}

AfdoState adapt_theta(AfdoState state, const std::vector<double>& psi, double dt) {
    if (!(dt > 0.0))
        throw DomainError("adapt_theta: dt must be > 0");
    if (state.theta_hat.size() != psi.size())
        throw ConfigError("adapt_theta: theta_hat/psi length mismatch");
    const double rate = -state.gamma_bar * state.zeta * dt;
    for (std::size_t i = 0; i < psi.size(); ++i)
        state.theta_hat[i] += rate * psi[i];
    return state;
}

bool zeta_condition(double zeta, double epsilon_bound, double sigma) {
    if (!(sigma > 0.0))
        throw DomainError("zeta_condition: sigma must be > 0");
    return zeta * zeta >= (epsilon_bound * epsilon_bound) / (sigma * sigma);
}

} // namespace windsmc

#include "windsmc/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

namespace windsmc {

namespace {

std::string trim(const std::string& s) {
    auto b = s.begin();
    auto e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return std::string(b, e);
}

class KeyTable {
public:
    explicit KeyTable(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) {
        known_.insert(key);
        return kv_.count(key) != 0;
    }

    std::string required_str(const std::string& key) {
        known_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end())
            throw ConfigError("scenario: missing required key '" + key + "'");
        return it->second;
    }

    std::string str(const std::string& key, const std::string& fallback) {
        known_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    double required_num(const std::string& key) { return to_num(key, required_str(key)); }

    double num(const std::string& key, double fallback) {
        known_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : to_num(key, it->second);
    }

    std::uint64_t u64(const std::string& key, std::uint64_t fallback) {
        known_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("scenario: key '" + key + "' must be a non-negative integer");
        }
    }

    void reject_unknown() const {
        for (const auto& [key, value] : kv_)
            if (!known_.count(key))
                throw ConfigError("scenario: unknown key '" + key + "'");
    }

    bool is_known_key(const std::string& key) const { return known_.count(key) != 0; }

private:
    static double to_num(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("scenario: key '" + key + "' must be a number");
        }
    }

    std::map<std::string, std::string> kv_;
    std::set<std::string> known_;
};

std::map<std::string, std::string> read_kv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("scenario: cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("scenario: expected 'key = value' on line " +
                              std::to_string(line_no));
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("scenario: empty key or value on line " + std::to_string(line_no));
        if (!kv.emplace(key, value).second)
            throw ConfigError("scenario: duplicate key '" + key + "'");
    }
    return kv;
}

ControllerKind parse_controller(const std::string& text) {
    if (text == "smc_afdo") return ControllerKind::smc_afdo;
    if (text == "smc_plain") return ControllerKind::smc_plain;
    if (text == "pid") return ControllerKind::pid;
    throw ConfigError("controller.type must be one of smc_afdo, smc_plain, pid");
}

} // namespace

ScenarioOverride parse_override(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq == text.size() - 1)
        throw ConfigError("override must look like key=value: '" + text + "'");
    return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

Scenario parse_scenario(const std::filesystem::path& path,
                        const std::vector<ScenarioOverride>& overrides,
                        std::optional<std::uint64_t> seed_override) {
    auto kv = read_kv_file(path);

    // Stage a throwaway pass to learn the key universe, then check overrides
    // against it so a typo in --set fails loudly.
    for (const auto& ov : overrides) {
        if (ov.key.empty() || ov.value.empty())
            throw ConfigError("override must look like key=value");
        kv[ov.key] = ov.value;
    }
    if (seed_override) kv["sim.seed"] = std::to_string(*seed_override);

    KeyTable table(std::move(kv));
    Scenario sc;

    sc.params.rho = table.required_num("plant.rho");
    sc.params.radius = table.required_num("plant.radius");
    sc.params.j_total = table.required_num("plant.j_total");
    sc.params.b_total = table.required_num("plant.b_total");
    sc.params.lambda_opt = table.required_num("plant.lambda_opt");
    sc.params.omega_floor = table.num("plant.omega_floor", 0.1);
    sc.params.mu[0] = table.num("plant.mu1", sc.params.mu[0]);
    sc.params.mu[1] = table.num("plant.mu2", sc.params.mu[1]);
    sc.params.mu[2] = table.num("plant.mu3", sc.params.mu[2]);
    sc.params.mu[3] = table.num("plant.mu4", sc.params.mu[3]);
    sc.params.mu[4] = table.num("plant.mu5", sc.params.mu[4]);
    sc.params.mu_exponent = table.num("plant.mu_exponent", sc.params.mu_exponent);
    if (table.has("plant.cp_opt")) {
        sc.params.cp_opt = table.num("plant.cp_opt", 0.0);
    } else {
        // Default to the peak of the configured Cp surface, so the energy
        // denominator is consistent with the model in use.
        sc.params.cp_opt = find_cp_optimum(sc.params).cp_star;
    }

    const std::string wind_kind = table.str("wind.kind", "synthetic");
    if (wind_kind == "synthetic") {
        sc.wind_cfg.kind = WindConfig::Kind::synthetic;
        sc.wind_cfg.mean = table.num("wind.mean", 8.0);
        sc.wind_cfg.turbulence_intensity = table.num("wind.turbulence_intensity", 0.12);
        sc.wind_cfg.duration = table.num("wind.duration", -1.0);
        sc.wind_cfg.sample_dt = table.num("wind.dt", -1.0);
        table.has("wind.path"); // recognized but unused for synthetic profiles
    } else if (wind_kind == "file") {
        sc.wind_cfg.kind = WindConfig::Kind::file;
        std::filesystem::path wind_path = table.required_str("wind.path");
        if (wind_path.is_relative()) wind_path = path.parent_path() / wind_path;
        sc.wind_cfg.path = wind_path.string();
        table.has("wind.mean");
        table.has("wind.turbulence_intensity");
        table.has("wind.duration");
        table.has("wind.dt");
    } else {
        throw ConfigError("wind.kind must be synthetic or file");
    }

    sc.controller = parse_controller(table.required_str("controller.type"));
    sc.tau_f = table.num("controller.tau_f", 0.05);

    sc.smc.k_p = table.num("smc.k_p", sc.smc.k_p);
    sc.smc.k_i = table.num("smc.k_i", sc.smc.k_i);
    sc.smc.k1 = table.num("smc.k1", sc.smc.k1);
    sc.smc.k2 = table.num("smc.k2", sc.smc.k2);
    sc.smc.tanh_width = table.num("smc.tanh_width", sc.smc.tanh_width);
    if (table.has("smc.torque_limit"))
        sc.smc.torque_limit = table.num("smc.torque_limit", 0.0);

    if (sc.controller == ControllerKind::pid) {
        sc.pid.kp = table.required_num("pid.kp");
        sc.pid.ki = table.required_num("pid.ki");
        sc.pid.kd = table.required_num("pid.kd");
    } else {
        sc.pid.kp = table.num("pid.kp", 0.0);
        sc.pid.ki = table.num("pid.ki", 0.0);
        sc.pid.kd = table.num("pid.kd", 0.0);
    }
    sc.pid.derivative_filter_tau = table.num("pid.derivative_filter_tau", 0.02);
    if (table.has("pid.torque_limit"))
        sc.pid.torque_limit = table.num("pid.torque_limit", 0.0);

    const auto m = static_cast<std::size_t>(table.num("afdo.m", 5.0));
    const double omega_lo = table.num("afdo.omega_min", 0.0);
    const double omega_hi = table.num("afdo.omega_max", 80.0);
    const double omega_dot_lo = table.num("afdo.omega_dot_min", -20.0);
    const double omega_dot_hi = table.num("afdo.omega_dot_max", 20.0);
    if (m < 2) throw ConfigError("afdo.m must be >= 2");
    if (!(omega_hi > omega_lo) || !(omega_dot_hi > omega_dot_lo))
        throw ConfigError("afdo membership ranges must be non-empty");
    sc.afdo.basis = FuzzyBasisConfig::make_uniform(m, omega_lo, omega_hi,
                                                   omega_dot_lo, omega_dot_hi);
    sc.afdo.sigma = table.num("afdo.sigma", 5.0);
    sc.afdo.gamma_bar = table.num("afdo.gamma_bar", 50.0);
    sc.afdo.epsilon_bound = table.num("afdo.epsilon_bound", 0.01);

    sc.dt = table.required_num("sim.dt");
    sc.t_end = table.required_num("sim.t_end");
    sc.omega0 = table.required_num("sim.omega0");
    sc.seed = table.u64("sim.seed", 42);

    const std::string integ = table.str("sim.integration", "rk4");
    if (integ == "rk4") sc.integration = IntegrationScheme::rk4;
    else if (integ == "euler") sc.integration = IntegrationScheme::euler;
    else throw ConfigError("sim.integration must be rk4 or euler");

    const std::string dist = table.str("sim.disturbance", "none");
    if (dist == "none") sc.disturbance.kind = Disturbance::Kind::none;
    else if (dist == "constant") sc.disturbance.kind = Disturbance::Kind::constant;
    else if (dist == "sinusoid") sc.disturbance.kind = Disturbance::Kind::sinusoid;
    else if (dist == "step") sc.disturbance.kind = Disturbance::Kind::step;
    else throw ConfigError("sim.disturbance must be none, constant, sinusoid, or step");
    sc.disturbance.d0 = table.num("sim.disturbance_d0", 0.0);
    sc.disturbance.amp = table.num("sim.disturbance_amp", 0.0);
    sc.disturbance.period = table.num("sim.disturbance_period", 1.0);
    sc.disturbance.t_on = table.num("sim.disturbance_t_on", 0.0);

    for (const auto& ov : overrides)
        if (!table.is_known_key(ov.key))
            throw ConfigError("override references unknown key '" + ov.key + "'");
    table.reject_unknown();

    sc.validate();
    resolve_wind(sc);
    return sc;
}

} // namespace windsmc

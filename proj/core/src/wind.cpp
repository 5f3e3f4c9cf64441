#include "windsmc/wind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace windsmc {

namespace {

void validate_generation(double mean, double ti, double duration, double dt) {
    if (!(mean > 0.0)) throw ConfigError("wind.mean must be > 0");
    if (!(ti >= 0.0 && ti < 0.5))
        throw ConfigError("wind.turbulence_intensity must lie in [0, 0.5)");
    if (!(dt > 0.0)) throw ConfigError("wind.dt must be > 0");
    if (!(duration >= dt)) throw ConfigError("wind.duration must be >= wind.dt");
}

double sample_mean(const std::vector<double>& x) {
    double s = 0.0;
    for (double xi : x) s += xi;
    return s / static_cast<double>(x.size());
}

double sample_std(const std::vector<double>& x, double mean) {
    double s = 0.0;
    for (double xi : x) s += (xi - mean) * (xi - mean);
    return std::sqrt(s / static_cast<double>(x.size()));
}

} // namespace

WindProfile generate_wind(double mean, double turbulence_intensity, double duration,
                          double dt, std::uint64_t seed) {
    validate_generation(mean, turbulence_intensity, duration, dt);

    const auto n = static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
    WindProfile profile;
    profile.kind = WindProfile::Kind::synthetic;
    profile.mean_target = mean;
    profile.seed = seed;
    profile.t.resize(n + 1);
    profile.v.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) profile.t[k] = static_cast<double>(k) * dt;

    if (turbulence_intensity == 0.0) {
        std::fill(profile.v.begin(), profile.v.end(), mean);
        return profile;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> white(0.0, 1.0);

    const double periods[3] = {50.0, 23.0, 11.0};
    const double weights[3] = {0.5, 0.3, 0.2};
    double phases[3];
    for (double& p : phases) p = phase(rng);

    // Noise: white sequence through two cascaded first-order stages so the
    // series stays differentiable at controller timescales. A single stage
    // would leave white-rate increments that a zero-order-hold lookup plus
    // backward differencing amplifies into torque chatter.
    const double noise_tau = 2.0;
    const double a = dt / (noise_tau + dt);
    double x1 = 0.0;
    double x2 = 0.0;
    const auto burn_in = static_cast<std::size_t>(5.0 * noise_tau / dt);
    for (std::size_t k = 0; k < burn_in; ++k) {
        x1 += a * (white(rng) - x1);
        x2 += a * (x1 - x2);
    }

    std::vector<double> sinusoid(n + 1);
    std::vector<double> noise(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = profile.t[k];
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            s += weights[i] * std::sin(2.0 * std::numbers::pi * t / periods[i] + phases[i]);
        sinusoid[k] = s;
        x1 += a * (white(rng) - x1);
        x2 += a * (x1 - x2);
        noise[k] = x2;
    }

    const double noise_std = sample_std(noise, sample_mean(noise));
    const double noise_gain = noise_std > 0.0 ? 0.45 / noise_std : 0.0;
    std::vector<double>& fluct = profile.v; // reuse as scratch
    for (std::size_t k = 0; k <= n; ++k)
        fluct[k] = 0.55 * sinusoid[k] + noise_gain * noise[k];

    // De-mean, then scale the realized std to the requested intensity.
    const double fm = sample_mean(fluct);
    for (double& f : fluct) f -= fm;
    const double fs = sample_std(fluct, 0.0);
    const double gain = fs > 0.0 ? turbulence_intensity * mean / fs : 0.0;
    for (double& f : fluct) f = std::max(mean + gain * f, 0.5);
    return profile;
}

WindProfile load_wind(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IngestError("load_wind: cannot open " + path.string());

    WindProfile profile;
    profile.kind = WindProfile::Kind::ingested;

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw IngestError("load_wind: empty file " + path.string());
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,v")
        throw IngestError("load_wind: expected header 't,v' on line 1");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        std::size_t t_end = 0;
        std::size_t v_end = 0;
        double t = 0.0;
        double v = 0.0;
        try {
            if (comma == std::string::npos) throw std::invalid_argument("no comma");
            t = std::stod(line.substr(0, comma), &t_end);
            v = std::stod(line.substr(comma + 1), &v_end);
        } catch (const std::exception&) {
            throw IngestError("load_wind: malformed row on line " + std::to_string(line_no));
        }
        if (t_end != comma || v_end != line.size() - comma - 1)
            throw IngestError("load_wind: malformed row on line " + std::to_string(line_no));
        if (!(v > 0.0))
            throw IngestError("load_wind: non-positive wind speed on line " +
                              std::to_string(line_no));
        if (!profile.t.empty() && !(t > profile.t.back()))
            throw IngestError("load_wind: non-increasing time on line " +
                              std::to_string(line_no));
        profile.t.push_back(t);
        profile.v.push_back(v);
    }
    if (profile.t.empty())
        throw IngestError("load_wind: no samples in " + path.string());
    profile.mean_target = sample_mean(profile.v);
    return profile;
}

void save_wind(const WindProfile& profile, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IngestError("save_wind: cannot open " + path.string() + " for writing");
    out << "t,v\n";
    char buf[80];
    for (std::size_t k = 0; k < profile.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", profile.t[k], profile.v[k]);
        out << buf;
    }
}

double wind_at(const WindProfile& profile, double t) {
    if (profile.t.empty())
        throw DomainError("wind_at: empty profile");
    const double tol = 1e-9;
    if (t < profile.t.front() - tol || t > profile.t.back() + tol)
        throw DomainError("wind_at: t outside the profile range");
    auto it = std::upper_bound(profile.t.begin(), profile.t.end(), t);
    const auto idx = it == profile.t.begin() ? 0 : static_cast<std::size_t>(it - profile.t.begin() - 1);
    return profile.v[idx];
}

} // namespace windsmc

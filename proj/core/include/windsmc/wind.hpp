#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "windsmc/errors.hpp"

namespace windsmc {

// Time-indexed wind-speed signal. Immutable after construction; lookups use
// zero-order hold (value at the greatest sample time <= t).
struct WindProfile {
    enum class Kind { synthetic, ingested };

    std::vector<double> t; // strictly increasing, s
    std::vector<double> v; // all > 0, m/s
    double mean_target = 0.0;
    std::uint64_t seed = 0;
    Kind kind = Kind::ingested;

    std::size_t size() const { return t.size(); }
};

// Seeded synthetic profile: mean + three incommensurate sinusoids
// (periods 50 s, 23 s, 11 s) + band-limited noise, rescaled so the realized
// std(v)/mean equals turbulence_intensity and the sample mean equals `mean`.
// Samples are clamped to >= 0.5 m/s. Deterministic for a given seed.
WindProfile generate_wind(double mean, double turbulence_intensity, double duration,
                          double dt, std::uint64_t seed);

// CSV with header "t,v"; throws IngestError naming the offending line.
WindProfile load_wind(const std::filesystem::path& path);

// Writer for the same format. Full-precision values so a reload reproduces
// the samples exactly.
void save_wind(const WindProfile& profile, const std::filesystem::path& path);

// Zero-order-hold lookup. Throws DomainError outside [t_first, t_last].
double wind_at(const WindProfile& profile, double t);

} // namespace windsmc

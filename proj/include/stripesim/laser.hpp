// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace stripesim {

struct QESample {
    double wavelength_nm;
    double qe_r;
    double qe_gr;
    double qe_gb;
    double qe_b;
};

// Per-channel effect of a laser on the image, in light-strength units.
struct ChannelGains {
    double r;
    double g;
    double b;
};

// Per-channel quantum-efficiency curve of a sensor, sampled over wavelength.
// Samples must be strictly increasing in wavelength with all fractions in
// [0, 1]; at least two samples. Queries interpolate piecewise-linearly and
// report the green channel as the mean of the Gr and Gb photosites.
class QECurve {
public:
    explicit QECurve(std::vector<QESample> samples);

    // CSV with header "wavelength_nm,qe_r,qe_gr,qe_gb,qe_b", one sample per
    // line, sorted ascending.
    static QECurve from_csv(const std::filesystem::path& path);

    // (f_R, f_G, f_B) at the given wavelength. Throws std::invalid_argument
    // outside the sampled range.
    ChannelGains at(double wavelength_nm) const;

    double min_wavelength() const { return samples_.front().wavelength_nm; }
    double max_wavelength() const { return samples_.back().wavelength_nm; }
    const std::vector<QESample>& samples() const { return samples_; }

private:
    std::vector<QESample> samples_;
};

// A laser as the model sees it: wavelength plus a dimensionless light
// strength (no physical unit is attached to the strength).
struct LaserSpec {
    double wavelength_nm;
    double intensity;
};

// Sensor filtering of the incoming laser: per-channel effect I * f_X(lambda).
ChannelGains photon_filter(const LaserSpec& spec, const QECurve& curve);

// Saturating addition of a laser effect onto one channel value: the effect is
// rounded half-up, added, and clamped at 255. Effect must be >= 0.
std::uint8_t stripe_add(std::uint8_t original, double effect);

// Channel index (0=R, 1=G, 2=B) with the highest gain; ties keep the lowest.
int dominant_channel(const ChannelGains& gains);

} // namespace stripesim

// SPDX-License-Identifier: Apache-2.0
#include "stripesim/laser.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stripesim/errors.hpp"

namespace stripesim {

QECurve::QECurve(std::vector<QESample> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2)
        throw std::invalid_argument("QECurve: need at least 2 samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const QESample& s = samples_[i];
        for (double q : {s.qe_r, s.qe_gr, s.qe_gb, s.qe_b}) {
            if (!(q >= 0.0 && q <= 1.0))
                throw std::invalid_argument("QECurve: QE fraction out of [0,1] at " +
                                            std::to_string(s.wavelength_nm) + " nm");
        }
        if (i > 0 && !(samples_[i - 1].wavelength_nm < s.wavelength_nm))
            throw std::invalid_argument("QECurve: wavelengths must be strictly increasing");
    }
}

QECurve QECurve::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open QE curve file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty QE curve file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "wavelength_nm,qe_r,qe_gr,qe_gb,qe_b")
        throw IoError(path.string() + ": bad QE CSV header: '" + line + "'");

    std::vector<QESample> samples;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        QESample s{};
        char c1, c2, c3, c4;
        if (!(ls >> s.wavelength_nm >> c1 >> s.qe_r >> c2 >> s.qe_gr >> c3 >> s.qe_gb >> c4 >>
              s.qe_b) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
            throw IoError(path.string() + ":" + std::to_string(lineno) +
                          ": malformed QE sample line");
        samples.push_back(s);
    }
    try {
        return QECurve(std::move(samples));
    } catch (const std::invalid_argument& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

ChannelGains QECurve::at(double wavelength_nm) const {
    if (wavelength_nm < min_wavelength() || wavelength_nm > max_wavelength())
        throw std::invalid_argument("QECurve: wavelength " + std::to_string(wavelength_nm) +
                                    " nm outside sampled range [" +
                                    std::to_string(min_wavelength()) + ", " +
                                    std::to_string(max_wavelength()) + "]");
    auto hi = std::lower_bound(samples_.begin(), samples_.end(), wavelength_nm,
                               [](const QESample& s, double w) { return s.wavelength_nm < w; });
    if (hi == samples_.begin()) {
        const QESample& s = *hi;
        return {s.qe_r, (s.qe_gr + s.qe_gb) / 2.0, s.qe_b};
    }
    const QESample& b = *hi;
    if (b.wavelength_nm == wavelength_nm)
        return {b.qe_r, (b.qe_gr + b.qe_gb) / 2.0, b.qe_b};
    const QESample& a = *(hi - 1);
    const double t = (wavelength_nm - a.wavelength_nm) / (b.wavelength_nm - a.wavelength_nm);
    auto lerp = [t](double x, double y) { return x + t * (y - x); };
    const double gr = lerp(a.qe_gr, b.qe_gr);
    const double gb = lerp(a.qe_gb, b.qe_gb);
    return {lerp(a.qe_r, b.qe_r), (gr + gb) / 2.0, lerp(a.qe_b, b.qe_b)};
}

ChannelGains photon_filter(const LaserSpec& spec, const QECurve& curve) {
    if (spec.intensity < 0)
        throw std::invalid_argument("photon_filter: intensity must be >= 0");
    const ChannelGains f = curve.at(spec.wavelength_nm);
    return {spec.intensity * f.r, spec.intensity * f.g, spec.intensity * f.b};
}

std::uint8_t stripe_add(std::uint8_t original, double effect) {
    if (effect < 0) throw std::invalid_argument("stripe_add: effect must be >= 0");
    const double v = double(original) + std::floor(effect + 0.5);
    return v >= 255.0 ? std::uint8_t(255) : std::uint8_t(v);
}

int dominant_channel(const ChannelGains& gains) {
    int best = 0;
    double val = gains.r;
    if (gains.g > val) {
        best = 1;
        val = gains.g;
    }
    if (gains.b > val) best = 2;
    return best;
}

} // namespace stripesim

// SPDX-License-Identifier: Apache-2.0
#include "stripesim/shutter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stripesim/rng.hpp"

namespace stripesim {

std::string_view to_string(ReadoutOrder o) {
    switch (o) {
    case ReadoutOrder::Sequential: return "Sequential";
    case ReadoutOrder::RandomPermutation: return "RandomPermutation";
    case ReadoutOrder::RandomStart: return "RandomStart";
    }
    return "?";
}

ReadoutOrder readout_order_from_string(std::string_view s) {
    std::string v(s);
    for (char& c : v) c = char(std::tolower(static_cast<unsigned char>(c)));
    v.erase(std::remove(v.begin(), v.end(), '_'), v.end());
    if (v == "sequential") return ReadoutOrder::Sequential;
    if (v == "randompermutation") return ReadoutOrder::RandomPermutation;
    if (v == "randomstart") return ReadoutOrder::RandomStart;
    throw std::invalid_argument("unknown readout order: '" + std::string(s) + "'");
}

void ShutterConfig::validate() const {
    if (n_rows < 1) throw std::invalid_argument("ShutterConfig: n_rows must be >= 1");
    if (!(frame_rate > 0)) throw std::invalid_argument("ShutterConfig: frame_rate must be > 0");
    if (!(exposure >= 0) || exposure > frame_time())
        throw std::invalid_argument("ShutterConfig: exposure must sit in [0, 1/frame_rate]");
}

void PulseTrain::validate() const {
    if (!(width > 0) || !(width <= period))
        throw std::invalid_argument("PulseTrain: need 0 < width <= period");
}

std::vector<int> readout_schedule(const ShutterConfig& cfg, std::uint64_t frame_index) {
    cfg.validate();
    std::vector<int> slots(std::size_t(cfg.n_rows));
    std::iota(slots.begin(), slots.end(), 0);
    switch (cfg.order) {
    case ReadoutOrder::Sequential: break;
    case ReadoutOrder::RandomPermutation: {
        Rng rng = Rng(cfg.seed).substream(frame_index);
        for (int i = cfg.n_rows - 1; i > 0; --i)
            std::swap(slots[std::size_t(i)], slots[std::size_t(rng.uniform_int(0, i))]);
        break;
    }
    case ReadoutOrder::RandomStart: {
        Rng rng = Rng(cfg.seed).substream(frame_index);
        const int shift = int(rng.uniform_int(0, cfg.n_rows - 1));
        for (int r = 0; r < cfg.n_rows; ++r) slots[std::size_t(r)] = (r + shift) % cfg.n_rows;
        break;
    }
    }
    return slots;
}

namespace {

// Total coverage of [a, b) by the bi-infinite pulse train.
double train_overlap(const PulseTrain& p, double a, double b) {
    if (b <= a) return 0.0;
    if (p.width >= p.period) return b - a; // continuous light
    const auto m0 = (long long)std::floor((a - p.phase - p.width) / p.period);
    const auto m1 = (long long)std::ceil((b - p.phase) / p.period);
    double total = 0.0;
    for (long long m = m0; m <= m1; ++m) {
        const double s = p.phase + double(m) * p.period;
        total += std::max(0.0, std::min(b, s + p.width) - std::max(a, s));
    }
    return total;
}

} // namespace

std::vector<RowOverlap> affected_rows_detail(const ShutterConfig& cfg, const PulseTrain& pulses,
                                             std::uint64_t frame_index) {
    pulses.validate();
    const std::vector<int> slots = readout_schedule(cfg, frame_index);
    const double t_row = cfg.row_time();
    const double window = std::max(cfg.exposure, t_row);

    // Work in frame-relative time: the pulse train shifted into this frame is
    // the base train drifted by frame_index * (period - frame_time). With the
    // period locked to the frame time the drift is exactly zero, so every
    // frame computes bitwise-identical overlaps.
    PulseTrain rel = pulses;
    rel.phase = pulses.phase + double(frame_index) * (pulses.period - cfg.frame_time());

    std::vector<RowOverlap> out(std::size_t(cfg.n_rows));
    for (int r = 0; r < cfg.n_rows; ++r) {
        const double start = double(slots[std::size_t(r)]) * t_row;
        const double covered = train_overlap(rel, start, start + window);
        double fraction = std::clamp(covered / window, 0.0, 1.0);
        // Snap the 1-ulp slivers that boundary arithmetic can leave behind.
        if (fraction < 1e-9) fraction = 0.0;
        if (fraction > 1.0 - 1e-9) fraction = 1.0;
        out[std::size_t(r)] = {fraction, slots[std::size_t(r)]};
    }
    return out;
}

std::vector<double> affected_rows(const ShutterConfig& cfg, const PulseTrain& pulses,
                                  std::uint64_t frame_index) {
    const auto detail = affected_rows_detail(cfg, pulses, frame_index);
    std::vector<double> fractions(detail.size());
    for (std::size_t i = 0; i < detail.size(); ++i) fractions[i] = detail[i].fraction;
    return fractions;
}

PulseTrain plan_pulse(const ShutterConfig& cfg, int light_top_row, int light_rows,
                      double margin) {
    cfg.validate();
    if (light_rows < 1) throw std::invalid_argument("plan_pulse: light_rows must be >= 1");
    if (!(margin >= 1.0)) throw std::invalid_argument("plan_pulse: margin must be >= 1");
    const double stripe_rows = margin * double(light_rows);
    if (stripe_rows > double(cfg.n_rows) + 1e-9)
        throw std::invalid_argument("plan_pulse: stripe taller than frame (" +
                                    std::to_string(stripe_rows) + " rows of " +
                                    std::to_string(cfg.n_rows) + ")");

    // Extend symmetrically beyond the light, snap to the row grid, and keep
    // the whole stripe inside the frame.
    double top = double(light_top_row) - (margin - 1.0) * double(light_rows) / 2.0;
    int top_slot = int(std::lround(top));
    const int max_top = cfg.n_rows - int(std::ceil(stripe_rows));
    top_slot = std::clamp(top_slot, 0, std::max(0, max_top));

    PulseTrain p;
    p.width = stripe_rows * cfg.row_time();
    p.period = cfg.frame_time();
    p.phase = double(top_slot) * cfg.row_time();
    return p;
}

std::pair<int, int> pulse_slot_span(const ShutterConfig& cfg, const PulseTrain& pulses) {
    const double t_row = cfg.row_time();
    const int first = int(std::lround(pulses.phase / t_row));
    const int count = std::max(1, int(std::lround(pulses.width / t_row)));
    return {first, std::min(count, cfg.n_rows)};
}

int stripe_contiguity(const std::vector<double>& overlaps, double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw std::invalid_argument("stripe_contiguity: threshold must be in (0, 1]");
    int best = 0;
    int run = 0;
    for (double f : overlaps) {
        if (f >= threshold) {
            ++run;
            best = std::max(best, run);
        } else {
            run = 0;
        }
    }
    return best;
}

} // namespace stripesim

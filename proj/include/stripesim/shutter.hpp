// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace stripesim {

// Row readout scheduling. Sequential is the stock rolling shutter; the other
// two are the hardening variants: a fresh row permutation per frame, or a
// random starting row per frame (cyclic shift).
enum class ReadoutOrder { Sequential, RandomPermutation, RandomStart };

std::string_view to_string(ReadoutOrder o);
ReadoutOrder readout_order_from_string(std::string_view s);

struct ShutterConfig {
    int n_rows = 964;           // N
    double frame_rate = 45.458; // f, Hz
    double exposure = 0.0;      // seconds per row; 0 means one row-slot
    ReadoutOrder order = ReadoutOrder::Sequential;
    std::uint64_t seed = 0; // drives the per-frame permutation / start row

    void validate() const;
    double row_time() const { return 1.0 / (double(n_rows) * frame_rate); }
    double frame_time() const { return 1.0 / frame_rate; }
};

// Periodic laser pulse train. The m-th pulse occupies
// [phase + m*period, phase + m*period + width) for every integer m, so with
// period == 1/f the pattern repeats identically each frame.
struct PulseTrain {
    double width = 0.0;  // seconds, 0 < width <= period
    double period = 0.0; // seconds
    double phase = 0.0;  // offset of a pulse start within frame 0

    void validate() const;
};

// Readout slot assigned to each physical row for the given frame: row r
// starts exposing at frame_start + schedule[r] * row_time. Sequential is the
// identity; the defenses derive their shuffle from (seed, frame_index).
std::vector<int> readout_schedule(const ShutterConfig& cfg, std::uint64_t frame_index);

// Fraction of each physical row's exposure window
// [start, start + max(exposure, row_time)) covered by the pulse train,
// in [0, 1].
std::vector<double> affected_rows(const ShutterConfig& cfg, const PulseTrain& pulses,
                                  std::uint64_t frame_index);

// Overlap fraction together with the row's readout slot, for compositions
// that need to know where in the stripe a scattered row was exposed.
struct RowOverlap {
    double fraction;
    int slot;
};
std::vector<RowOverlap> affected_rows_detail(const ShutterConfig& cfg, const PulseTrain& pulses,
                                             std::uint64_t frame_index);

// Plans the pulse that paints a stripe of margin * light_rows rows vertically
// centered on the light: width = margin * light_rows / (n_rows * frame_rate),
// period = one frame, phase snapped to the row grid and clamped so the stripe
// stays inside the frame. Throws if the stripe would be taller than the frame.
PulseTrain plan_pulse(const ShutterConfig& cfg, int light_top_row, int light_rows,
                      double margin = 1.5);

// Slot span [first, first + count) covered by one pulse of a train whose
// phase/width came from plan_pulse.
std::pair<int, int> pulse_slot_span(const ShutterConfig& cfg, const PulseTrain& pulses);

// Longest run of consecutive physical rows with fraction >= threshold.
// Threshold must be in (0, 1].
int stripe_contiguity(const std::vector<double>& overlaps, double threshold);

} // namespace stripesim

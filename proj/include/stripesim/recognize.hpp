// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string_view>
#include <vector>

#include "stripesim/raster.hpp"

namespace stripesim {

enum class Outcome { Red, Yellow, Green, Black, DoS };

std::string_view to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

struct Hsv {
    double hue;        // degrees, [0, 360); 0 when saturation is 0
    double saturation; // [0, 1]
    double value;      // [0, 1]
};

// Standard hexcone RGB -> HSV.
Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// One lamp's pixel box inside the housing, tagged with the color that lamp
// shows when lit.
struct LampBox {
    Outcome color; // Red, Yellow, or Green
    int top, left, height, width;
};

// Manually supplied bounding box of the traffic-light housing plus up to
// three lamp sub-boxes. The box must sit inside the image, lamps inside the
// box and pairwise disjoint.
struct TrafficLightROI {
    int top = 0, left = 0, height = 1, width = 1;
    std::vector<LampBox> lamps;

    void validate(int image_rows, int image_cols) const;
};

// CSV with header "top,left,height,width,lamp,lamp_top,lamp_left,lamp_h,lamp_w"
// and one line per lamp; all lines repeat the same outer box.
TrafficLightROI read_roi_csv(const std::filesystem::path& path);
void write_roi_csv(const TrafficLightROI& roi, const std::filesystem::path& path);

// Calibration constants of the oracle. The defaults are frozen; every gate is
// overridable for recognizers tuned to other scenes.
struct RecognizerParams {
    // Detection: the ROI counts as washed out (DoS) when more than
    // washed_fraction_dos of its pixels are near-white, or when the value
    // channel is structureless.
    double washed_value_min = 0.95;
    double washed_saturation_max = 0.15;
    double washed_fraction_dos = 0.5;
    double value_stddev_min = 0.02;
    // Classification: a lamp pixel joins a color mask only above these gates.
    double mask_saturation_min = 0.35;
    double mask_value_min = 0.35;
    double decision_threshold = 0.12;
    // Hue membership, degrees. Red wraps around 0.
    double red_hue_below = 15.0;
    double red_hue_above = 345.0;
    double yellow_hue_lo = 35.0;
    double yellow_hue_hi = 75.0;
    double green_hue_lo = 90.0;
    double green_hue_hi = 160.0;
};

struct Detection {
    bool detected;
    double confidence; // 1 - washed-out fraction
};

struct RecognitionResult {
    Outcome outcome;
    double confidence;
    double score_red = 0.0;
    double score_yellow = 0.0;
    double score_green = 0.0;
};

// Detection stage: fails (DoS) when the ROI is washed out or structureless.
Detection detect(const RgbImage& image, const TrafficLightROI& roi,
                 const RecognizerParams& params = {});

// Recognition stage: counts hue-mask membership over all lamp pixels that
// pass the saturation/value gates; score = count / total lamp pixels. The
// outcome is the argmax class when its score reaches decision_threshold,
// otherwise Black. Assumes detection already succeeded.
RecognitionResult classify(const RgbImage& image, const TrafficLightROI& roi,
                           const RecognizerParams& params = {});

// detect then classify; a failed detection short-circuits to DoS.
RecognitionResult recognize(const RgbImage& image, const TrafficLightROI& roi,
                            const RecognizerParams& params = {});

// Pluggable recognizer slot so an external system can stand in for the oracle.
using Recognizer = std::function<RecognitionResult(const RgbImage&, const TrafficLightROI&)>;

} // namespace stripesim

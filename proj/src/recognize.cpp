// SPDX-License-Identifier: Apache-2.0
#include "stripesim/recognize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stripesim/errors.hpp"

namespace stripesim {

std::string_view to_string(Outcome o) {
    switch (o) {
    case Outcome::Red: return "Red";
    case Outcome::Yellow: return "Yellow";
    case Outcome::Green: return "Green";
    case Outcome::Black: return "Black";
    case Outcome::DoS: return "DoS";
    }
    return "?";
}

Outcome outcome_from_string(std::string_view s) {
    std::string v(s);
    for (char& c : v) c = char(std::tolower(static_cast<unsigned char>(c)));
    if (v == "red") return Outcome::Red;
    if (v == "yellow") return Outcome::Yellow;
    if (v == "green") return Outcome::Green;
    if (v == "black") return Outcome::Black;
    if (v == "dos") return Outcome::DoS;
    throw std::invalid_argument("unknown outcome: '" + std::string(s) + "'");
}

Hsv rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
    const double r = r8 / 255.0;
    const double g = g8 / 255.0;
    const double b = b8 / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;

    Hsv out{0.0, 0.0, mx};
    if (mx > 0.0) out.saturation = d / mx;
    if (d > 0.0) {
        double h;
        if (mx == r)
            h = 60.0 * ((g - b) / d);
        else if (mx == g)
            h = 60.0 * ((b - r) / d + 2.0);
        else
            h = 60.0 * ((r - g) / d + 4.0);
        if (h < 0.0) h += 360.0;
        if (h >= 360.0) h -= 360.0;
        out.hue = h;
    }
    return out;
}

namespace {

bool box_inside(int top, int left, int height, int width, int outer_top, int outer_left,
                int outer_height, int outer_width) {
    return top >= outer_top && left >= outer_left && height >= 1 && width >= 1 &&
           top + height <= outer_top + outer_height && left + width <= outer_left + outer_width;
}

bool boxes_overlap(const LampBox& a, const LampBox& b) {
    return a.top < b.top + b.height && b.top < a.top + a.height && a.left < b.left + b.width &&
           b.left < a.left + a.width;
}

} // namespace

void TrafficLightROI::validate(int image_rows, int image_cols) const {
    if (!box_inside(top, left, height, width, 0, 0, image_rows, image_cols))
        throw std::invalid_argument("TrafficLightROI: box out of image bounds");
    if (lamps.size() > 3)
        throw std::invalid_argument("TrafficLightROI: at most 3 lamp boxes");
    for (std::size_t i = 0; i < lamps.size(); ++i) {
        const LampBox& l = lamps[i];
        if (l.color != Outcome::Red && l.color != Outcome::Yellow && l.color != Outcome::Green)
            throw std::invalid_argument("TrafficLightROI: lamp color must be Red/Yellow/Green");
        if (!box_inside(l.top, l.left, l.height, l.width, top, left, height, width))
            throw std::invalid_argument("TrafficLightROI: lamp box outside the housing box");
        for (std::size_t j = i + 1; j < lamps.size(); ++j)
            if (boxes_overlap(l, lamps[j]))
                throw std::invalid_argument("TrafficLightROI: lamp boxes overlap");
    }
}

TrafficLightROI read_roi_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ROI file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty ROI file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "top,left,height,width,lamp,lamp_top,lamp_left,lamp_h,lamp_w")
        throw IoError(path.string() + ": bad ROI CSV header");

    TrafficLightROI roi;
    bool first = true;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 9)
            throw IoError(path.string() + ":" + std::to_string(lineno) +
                          ": expected 9 CSV fields");
        try {
            const int top = std::stoi(fields[0]);
            const int left = std::stoi(fields[1]);
            const int height = std::stoi(fields[2]);
            const int width = std::stoi(fields[3]);
            if (first) {
                roi.top = top;
                roi.left = left;
                roi.height = height;
                roi.width = width;
                first = false;
            } else if (top != roi.top || left != roi.left || height != roi.height ||
                       width != roi.width) {
                throw IoError(path.string() + ":" + std::to_string(lineno) +
                              ": housing box differs between lamp lines");
            }
            LampBox lamp;
            lamp.color = outcome_from_string(fields[4]);
            lamp.top = std::stoi(fields[5]);
            lamp.left = std::stoi(fields[6]);
            lamp.height = std::stoi(fields[7]);
            lamp.width = std::stoi(fields[8]);
            roi.lamps.push_back(lamp);
        } catch (const IoError&) {
            throw;
        } catch (const std::exception& e) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (first) throw IoError(path.string() + ": ROI file has no lamp lines");
    return roi;
}

void write_roi_csv(const TrafficLightROI& roi, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open ROI file for writing: " + path.string());
    out << "top,left,height,width,lamp,lamp_top,lamp_left,lamp_h,lamp_w\n";
    for (const LampBox& l : roi.lamps) {
        std::string name(to_string(l.color));
        for (char& c : name) c = char(std::tolower(static_cast<unsigned char>(c)));
        out << roi.top << ',' << roi.left << ',' << roi.height << ',' << roi.width << ',' << name
            << ',' << l.top << ',' << l.left << ',' << l.height << ',' << l.width << '\n';
    }
    if (!out) throw IoError("failed writing ROI file: " + path.string());
}

Detection detect(const RgbImage& image, const TrafficLightROI& roi,
                 const RecognizerParams& params) {
    roi.validate(image.rows, image.cols);

    std::size_t washed = 0;
    double sum_v = 0.0;
    double sum_v2 = 0.0;
    const std::size_t total = std::size_t(roi.height) * std::size_t(roi.width);
    for (int r = roi.top; r < roi.top + roi.height; ++r) {
        for (int c = roi.left; c < roi.left + roi.width; ++c) {
            const Hsv hsv = rgb_to_hsv(image.at(r, c, 0), image.at(r, c, 1), image.at(r, c, 2));
            if (hsv.value >= params.washed_value_min &&
                hsv.saturation <= params.washed_saturation_max)
                ++washed;
            sum_v += hsv.value;
            sum_v2 += hsv.value * hsv.value;
        }
    }
    const double washed_fraction = double(washed) / double(total);
    const double mean_v = sum_v / double(total);
    const double var_v = std::max(0.0, sum_v2 / double(total) - mean_v * mean_v);
    const double std_v = std::sqrt(var_v);

    Detection d;
    d.detected = !(washed_fraction > params.washed_fraction_dos ||
                   std_v < params.value_stddev_min);
    d.confidence = 1.0 - washed_fraction;
    return d;
}

RecognitionResult classify(const RgbImage& image, const TrafficLightROI& roi,
                           const RecognizerParams& params) {
    roi.validate(image.rows, image.cols);

    std::size_t total = 0;
    std::size_t count_red = 0, count_yellow = 0, count_green = 0;
    for (const LampBox& lamp : roi.lamps) {
        total += std::size_t(lamp.height) * std::size_t(lamp.width);
        for (int r = lamp.top; r < lamp.top + lamp.height; ++r) {
            for (int c = lamp.left; c < lamp.left + lamp.width; ++c) {
                const Hsv hsv =
                    rgb_to_hsv(image.at(r, c, 0), image.at(r, c, 1), image.at(r, c, 2));
                if (hsv.saturation < params.mask_saturation_min ||
                    hsv.value < params.mask_value_min)
                    continue;
                if (hsv.hue < params.red_hue_below || hsv.hue > params.red_hue_above)
                    ++count_red;
                else if (hsv.hue >= params.yellow_hue_lo && hsv.hue <= params.yellow_hue_hi)
                    ++count_yellow;
                else if (hsv.hue >= params.green_hue_lo && hsv.hue <= params.green_hue_hi)
                    ++count_green;
            }
        }
    }

    RecognitionResult res;
    res.score_red = total ? double(count_red) / double(total) : 0.0;
    res.score_yellow = total ? double(count_yellow) / double(total) : 0.0;
    res.score_green = total ? double(count_green) / double(total) : 0.0;

    Outcome best = Outcome::Red;
    double best_score = res.score_red;
    if (res.score_yellow > best_score) {
        best = Outcome::Yellow;
        best_score = res.score_yellow;
    }
    if (res.score_green > best_score) {
        best = Outcome::Green;
        best_score = res.score_green;
    }
    if (best_score >= params.decision_threshold) {
        res.outcome = best;
        res.confidence = best_score;
    } else {
        res.outcome = Outcome::Black;
        res.confidence = 1.0 - best_score;
    }
    return res;
}

RecognitionResult recognize(const RgbImage& image, const TrafficLightROI& roi,
                            const RecognizerParams& params) {
    const Detection d = detect(image, roi, params);
    if (!d.detected) {
        RecognitionResult res;
        res.outcome = Outcome::DoS;
        res.confidence = 1.0 - d.confidence;
        return res;
    }
    return classify(image, roi, params);
}

} // namespace stripesim

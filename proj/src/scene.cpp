// SPDX-License-Identifier: Apache-2.0
#include "stripesim/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stripesim/rng.hpp"

namespace stripesim {

namespace {
std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
    return out;
}
} // namespace

LitLamp lit_lamp_from_string(std::string_view s) {
    const std::string v = lower(s);
    if (v == "red") return LitLamp::Red;
    if (v == "yellow") return LitLamp::Yellow;
    if (v == "green") return LitLamp::Green;
    if (v == "none") return LitLamp::None;
    throw std::invalid_argument("unknown lit lamp: '" + std::string(s) + "'");
}

BackgroundKind background_from_string(std::string_view s) {
    const std::string v = lower(s);
    if (v == "sky") return BackgroundKind::Sky;
    if (v == "clutter") return BackgroundKind::Clutter;
    throw std::invalid_argument("unknown background: '" + std::string(s) + "'");
}

LightPosition light_position_from_string(std::string_view s) {
    const std::string v = lower(s);
    if (v == "left" || v == "l") return LightPosition::Left;
    if (v == "midleft" || v == "ml") return LightPosition::MidLeft;
    if (v == "mid" || v == "m" || v == "middle") return LightPosition::Mid;
    if (v == "midright" || v == "mr") return LightPosition::MidRight;
    if (v == "right" || v == "r") return LightPosition::Right;
    throw std::invalid_argument("unknown light position: '" + std::string(s) + "'");
}

std::string_view to_string(LitLamp l) {
    switch (l) {
    case LitLamp::Red: return "Red";
    case LitLamp::Yellow: return "Yellow";
    case LitLamp::Green: return "Green";
    case LitLamp::None: return "None";
    }
    return "?";
}

namespace {

void check_lit_color(const Rgb& c, const char* name) {
    const int mx = std::max({int(c.r), int(c.g), int(c.b)});
    const int mn = std::min({int(c.r), int(c.g), int(c.b)});
    if (mx < 200 || mn > 60)
        throw std::invalid_argument(std::string("SceneSpec: lit color ") + name +
                                    " must have a dominant channel >= 200 and its weakest "
                                    "channel <= 60");
}

int resolved_left(const SceneSpec& spec) {
    if (spec.housing_left >= 0) return spec.housing_left;
    return int(std::lround(spec.horizontal_center * spec.cols - spec.housing_width() / 2.0));
}

int resolved_top(const SceneSpec& spec) {
    if (spec.housing_top >= 0) return spec.housing_top;
    return int(std::lround(spec.vertical_center * spec.rows - spec.housing_height() / 2.0));
}

void fill_rect(RgbImage& img, int top, int left, int height, int width, Rgb color) {
    const int r1 = std::min(img.rows, top + height);
    const int c1 = std::min(img.cols, left + width);
    for (int r = std::max(0, top); r < r1; ++r) {
        for (int c = std::max(0, left); c < c1; ++c) {
            img.at(r, c, 0) = color.r;
            img.at(r, c, 1) = color.g;
            img.at(r, c, 2) = color.b;
        }
    }
}

void fill_disc(RgbImage& img, int center_r, int center_c, int radius, Rgb color) {
    for (int r = center_r - radius; r <= center_r + radius; ++r) {
        for (int c = center_c - radius; c <= center_c + radius; ++c) {
            if (!img.in_bounds(r, c)) continue;
            const int dr = r - center_r;
            const int dc = c - center_c;
            if (dr * dr + dc * dc <= radius * radius) {
                img.at(r, c, 0) = color.r;
                img.at(r, c, 1) = color.g;
                img.at(r, c, 2) = color.b;
            }
        }
    }
}

} // namespace

void SceneSpec::validate() const {
    if (rows < 8 || cols < 8) throw std::invalid_argument("SceneSpec: image too small");
    if (lamp_box < 3 || lamp_pad < 0 || lamp_radius < 1)
        throw std::invalid_argument("SceneSpec: malformed lamp layout");
    if (2 * lamp_radius > lamp_box)
        throw std::invalid_argument("SceneSpec: lamp disc larger than its box");
    const int left = resolved_left(*this);
    const int top = resolved_top(*this);
    if (left < 0 || top < 0 || left + housing_width() > cols || top + housing_height() > rows)
        throw std::invalid_argument("SceneSpec: housing does not fit the frame");
    check_lit_color(lit_red, "red");
    check_lit_color(lit_yellow, "yellow");
    check_lit_color(lit_green, "green");
}

Scene generate(const SceneSpec& spec) {
    spec.validate();

    RgbImage img;
    if (spec.background == BackgroundKind::Sky) {
        img = RgbImage::filled(spec.rows, spec.cols, spec.sky.r, spec.sky.g, spec.sky.b);
    } else {
        img = RgbImage::filled(spec.rows, spec.cols, 120, 122, 126);
        Rng rng = Rng(spec.seed).substream("clutter");
        const int rects = 48;
        for (int i = 0; i < rects; ++i) {
            const int height = int(rng.uniform_int(12, spec.rows / 3));
            const int width = int(rng.uniform_int(12, spec.cols / 3));
            const int top = int(rng.uniform_int(0, spec.rows - 1));
            const int left = int(rng.uniform_int(0, spec.cols - 1));
            const Rgb color{std::uint8_t(rng.uniform_int(40, 190)),
                            std::uint8_t(rng.uniform_int(40, 190)),
                            std::uint8_t(rng.uniform_int(40, 190))};
            fill_rect(img, top, left, height, width, color);
        }
    }

    const int left = resolved_left(spec);
    const int top = resolved_top(spec);
    fill_rect(img, top, left, spec.housing_height(), spec.housing_width(), spec.housing);

    TrafficLightROI roi;
    roi.top = top;
    roi.left = left;
    roi.height = spec.housing_height();
    roi.width = spec.housing_width();

    const Outcome order[3] = {Outcome::Red, Outcome::Yellow, Outcome::Green};
    for (int i = 0; i < 3; ++i) {
        LampBox lamp;
        lamp.color = order[i];
        lamp.top = top + spec.lamp_pad + i * (spec.lamp_box + spec.lamp_pad);
        lamp.left = left + spec.lamp_pad;
        lamp.height = spec.lamp_box;
        lamp.width = spec.lamp_box;
        roi.lamps.push_back(lamp);

        const bool lit = (lamp.color == Outcome::Red && spec.lit == LitLamp::Red) ||
                         (lamp.color == Outcome::Yellow && spec.lit == LitLamp::Yellow) ||
                         (lamp.color == Outcome::Green && spec.lit == LitLamp::Green);
        Rgb disc = spec.unlit;
        if (lit) {
            if (lamp.color == Outcome::Red) disc = spec.lit_red;
            if (lamp.color == Outcome::Yellow) disc = spec.lit_yellow;
            if (lamp.color == Outcome::Green) disc = spec.lit_green;
        }
        fill_disc(img, lamp.top + spec.lamp_box / 2, lamp.left + spec.lamp_box / 2,
                  spec.lamp_radius, disc);
    }

    roi.validate(img.rows, img.cols);
    return {std::move(img), std::move(roi)};
}

Scene place(const SceneSpec& spec, LightPosition position, double scale) {
    if (!(scale > 0)) throw std::invalid_argument("place: scale must be > 0");
    SceneSpec scaled = spec;
    scaled.lamp_box = std::max(3, int(std::lround(spec.lamp_box * scale)));
    scaled.lamp_pad = std::max(0, int(std::lround(spec.lamp_pad * scale)));
    scaled.lamp_radius =
        std::clamp(int(std::lround(spec.lamp_radius * scale)), 1, scaled.lamp_box / 2);

    const int w = scaled.housing_width();
    const int left_outer = int(std::lround(0.10 * spec.cols - w / 2.0));
    const int left_inner = int(std::lround(0.30 * spec.cols - w / 2.0));
    switch (position) {
    case LightPosition::Left: scaled.housing_left = left_outer; break;
    case LightPosition::MidLeft: scaled.housing_left = left_inner; break;
    case LightPosition::Mid: scaled.housing_left = int(std::lround((spec.cols - w) / 2.0)); break;
    // Mirrors of the two left placements, exact by construction.
    case LightPosition::MidRight: scaled.housing_left = spec.cols - w - left_inner; break;
    case LightPosition::Right: scaled.housing_left = spec.cols - w - left_outer; break;
    }
    scaled.housing_top =
        int(std::lround(spec.vertical_center * spec.rows - scaled.housing_height() / 2.0));
    return generate(scaled);
}

} // namespace stripesim

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include "stripesim/raster.hpp"
#include "stripesim/recognize.hpp"

namespace stripesim {

enum class LitLamp { Red, Yellow, Green, None };
enum class BackgroundKind { Sky, Clutter };
enum class LightPosition { Left, MidLeft, Mid, MidRight, Right };

LitLamp lit_lamp_from_string(std::string_view s);
BackgroundKind background_from_string(std::string_view s);
LightPosition light_position_from_string(std::string_view s);
std::string_view to_string(LitLamp l);

struct Rgb {
    std::uint8_t r, g, b;
};

// Deterministic synthetic traffic-light scene: a dark housing with three
// vertically stacked lamps (red / yellow / green, top to bottom), one of them
// lit, over a sky or seeded-clutter background. The lit colors sit centrally
// inside the recognizer's hue gates and are overridable.
struct SceneSpec {
    int rows = 964;
    int cols = 1280;

    // Housing placement. housing_left < 0 places by horizontal_center.
    double horizontal_center = 0.70;
    double vertical_center = 0.45;
    int housing_left = -1;
    int housing_top = -1;

    // Lamp layout; the housing size derives from these.
    int lamp_box = 72;    // lamp sub-box side, px
    int lamp_pad = 12;    // padding between boxes and housing border
    int lamp_radius = 34; // lamp disc radius

    LitLamp lit = LitLamp::Green;
    BackgroundKind background = BackgroundKind::Sky;
    std::uint64_t seed = 0; // clutter background stream

    Rgb sky{132, 180, 226};
    Rgb housing{30, 30, 32};
    Rgb unlit{45, 42, 40};
    Rgb lit_red{230, 40, 30};
    Rgb lit_yellow{240, 200, 40};
    Rgb lit_green{40, 220, 90};

    int housing_width() const { return lamp_box + 2 * lamp_pad; }
    int housing_height() const { return 3 * lamp_box + 4 * lamp_pad; }

    // Checks layout fit and that each lit color has its dominant channel
    // >= 200 and its weakest channel <= 60.
    void validate() const;
};

struct Scene {
    RgbImage image;
    TrafficLightROI roi;
};

// Renders the scene; the returned ROI is the drawn housing box with the three
// lamp sub-boxes. Same spec and seed give a bitwise-identical image.
Scene generate(const SceneSpec& spec);

// Renders the light at one of five named horizontal positions, scaled by the
// given factor. Left/Right (and MidLeft/MidRight) placements mirror each
// other about the vertical center line.
Scene place(const SceneSpec& spec, LightPosition position, double scale);

} // namespace stripesim

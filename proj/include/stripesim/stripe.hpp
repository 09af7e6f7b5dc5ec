// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stripesim/laser.hpp"
#include "stripesim/raster.hpp"
#include "stripesim/rng.hpp"

namespace stripesim {

// Which side of the camera the laser comes from.
enum class Direction { Left, Right, Front };

// Spatial distribution of the light strength across the stripe.
enum class FieldModel { Linear, Sigmoid, Gaussian };

std::string_view to_string(Direction d);
std::string_view to_string(FieldModel m);
Direction direction_from_string(std::string_view s);
FieldModel field_model_from_string(std::string_view s);

// Horizontal band of rows the stripe occupies. x runs down image rows with
// x = top_row at the stripe's top edge; y runs across the full image width.
struct StripeRegion {
    int top_row = 0; // x0
    int height = 1;  // h, rows
    int width = 1;   // w, image width in columns

    bool contains(double x, double y) const {
        return x >= top_row && x < top_row + height && y >= 0 && y < width;
    }
};

// Stripe geometry plus the intensity distribution over it.
//
// Side incidence (Left/Right) pairs with Linear or Sigmoid; frontal incidence
// pairs with Gaussian, whose peak sits at the stripe center and which ignores
// i_min (it decays toward zero at the periphery on its own). i_min == i_max
// is allowed and yields a uniform field.
struct StripeField {
    StripeRegion region;
    Direction direction = Direction::Left;
    FieldModel model = FieldModel::Linear;
    double i_min = 0.0;
    double i_max = 0.0;
    double alpha1 = 5.0; // sigmoid steepness
    double alpha2 = 2.0; // sigmoid inflection at y = w / alpha2
    double sigma1 = 2.0; // gaussian vertical decay
    double sigma2 = 4.0; // gaussian horizontal decay
    double rho = 0.0;    // gaussian cross-correlation

    void validate() const;
};

// Light strength at point (x, y) of the stripe. Linear and Sigmoid are
// constant down rows and decay away from the incidence side; their values
// span [i_min, i_max] with i_max on the incidence side. Gaussian peaks at
// exactly i_max in the stripe center. Throws std::invalid_argument for
// points outside the region.
double field_intensity(const StripeField& field, double x, double y);

// Snow-flake noise from lens abrasion: small near-saturated rectangles
// scattered inside the stripe.
struct NoiseParams {
    double beta1 = 8.0; // horizontal exponential decay rate
    double beta2 = 5.0; // vertical concentration (sigma = h / beta2)
    int n_min = 20;
    int n_max = 60;
    int brightness_min = 240;
    int brightness_max = 255;
    int size_min = 1;
    int size_max = 5;
    std::uint64_t seed = 0;

    void validate() const;
    static NoiseParams none(); // n_min = n_max = 0
};

struct NoiseRect {
    int x; // top row
    int y; // left column
    int height;
    int width;
    std::uint8_t brightness;
};

// Draws the noise rectangles for one stripe. Count is uniform in
// [n_min, n_max]; sizes uniform in {size_min..size_max}^2. For side
// incidence, y follows a truncated exponential decaying away from the
// incidence side and x a Normal(top + h/2, h/beta2) truncated to the stripe
// rows (both truncations by resampling); frontal incidence scatters
// uniformly. Brightness is a uniform integer in [brightness_min,
// brightness_max]. Deterministic given the RNG state.
std::vector<NoiseRect> sample_noise(const NoiseParams& params, const StripeRegion& region,
                                    Direction direction, Rng& rng);

// Convenience overload seeding the stream from params.seed.
std::vector<NoiseRect> sample_noise(const NoiseParams& params, const StripeRegion& region,
                                    Direction direction);

// Renders a laser stripe onto a copy of the image: every stripe pixel gets
// stripe_add(channel, field_intensity * f_X(lambda)) per channel, then the
// noise rectangles overwrite the laser's dominant channel with their
// brightness (clipped to the stripe region). Pixels outside the region are
// untouched. The region must span the image width and lie inside the image.
RgbImage render_stripe(const RgbImage& image, const StripeField& field, const LaserSpec& spec,
                       const QECurve& curve, const NoiseParams& noise);
RgbImage render_stripe(const RgbImage& image, const StripeField& field, const LaserSpec& spec,
                       const QECurve& curve, const NoiseParams& noise, Rng& rng);

// One illuminated image row for compositions where the readout schedule
// scatters the stripe: `row` is the physical image row, `gain` scales the
// injected light strength (exposure overlap fraction), and `slot` is the
// readout slot whose field column the row samples (clamped into the region).
struct RowIllumination {
    int row;
    double gain;
    int slot;
};

// Renders scattered stripe rows without noise: each listed row gets
// gain * field_intensity(field, slot, y) per column. Rows not listed are
// untouched.
RgbImage render_striped_rows(const RgbImage& image, std::span<const RowIllumination> rows,
                             const StripeField& field, const LaserSpec& spec,
                             const QECurve& curve);

} // namespace stripesim

// SPDX-License-Identifier: Apache-2.0
#include "stripesim/stripe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stripesim {

std::string_view to_string(Direction d) {
    switch (d) {
    case Direction::Left: return "Left";
    case Direction::Right: return "Right";
    case Direction::Front: return "Front";
    }
    return "?";
}

std::string_view to_string(FieldModel m) {
    switch (m) {
    case FieldModel::Linear: return "Linear";
    case FieldModel::Sigmoid: return "Sigmoid";
    case FieldModel::Gaussian: return "Gaussian";
    }
    return "?";
}

namespace {
std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
    return out;
}
} // namespace

Direction direction_from_string(std::string_view s) {
    const std::string v = lower(s);
    if (v == "left") return Direction::Left;
    if (v == "right") return Direction::Right;
    if (v == "front") return Direction::Front;
    throw std::invalid_argument("unknown incidence direction: '" + std::string(s) + "'");
}

FieldModel field_model_from_string(std::string_view s) {
    const std::string v = lower(s);
    if (v == "linear") return FieldModel::Linear;
    if (v == "sigmoid") return FieldModel::Sigmoid;
    if (v == "gaussian") return FieldModel::Gaussian;
    throw std::invalid_argument("unknown field model: '" + std::string(s) + "'");
}

void StripeField::validate() const {
    if (region.top_row < 0 || region.height < 1 || region.width < 1)
        throw std::invalid_argument("StripeField: malformed region");
    if (!(i_min >= 0.0) || !(i_max >= i_min))
        throw std::invalid_argument("StripeField: need 0 <= i_min <= i_max");
    if (direction == Direction::Front) {
        if (model != FieldModel::Gaussian)
            throw std::invalid_argument("StripeField: frontal incidence requires the Gaussian "
                                        "model");
    } else if (model == FieldModel::Gaussian) {
        throw std::invalid_argument("StripeField: side incidence requires Linear or Sigmoid");
    }
    if (model == FieldModel::Sigmoid && (!(alpha1 > 0.0) || !(alpha2 > 1.0)))
        throw std::invalid_argument("StripeField: sigmoid needs alpha1 > 0 and alpha2 > 1");
    if (model == FieldModel::Gaussian &&
        (!(sigma1 > 0.0) || !(sigma2 > 0.0) || !(std::abs(rho) < 1.0)))
        throw std::invalid_argument("StripeField: gaussian needs sigma1, sigma2 > 0 and "
                                    "|rho| < 1");
}

double field_intensity(const StripeField& field, double x, double y) {
    if (!field.region.contains(x, y))
        throw std::invalid_argument("field_intensity: point outside stripe region");
    const double w = field.region.width;
    const double h = field.region.height;

    switch (field.model) {
    case FieldModel::Linear: {
        const double yy = field.direction == Direction::Left ? y : w - y;
        return field.i_max - (yy / w) * (field.i_max - field.i_min);
    }
    case FieldModel::Sigmoid: {
        const double scale = w / field.alpha2;
        double z = field.alpha1 * (y - scale) / scale;
        if (field.direction == Direction::Left) z = -z;
        const double logistic = 1.0 / (1.0 + std::exp(-z));
        return field.i_min + (field.i_max - field.i_min) * logistic;
    }
    case FieldModel::Gaussian: {
        const double dx = x - field.region.top_row - h / 2.0;
        const double dy = y - w / 2.0;
        const double a = (dx * field.sigma1 / h) * (dx * field.sigma1 / h);
        const double b = (dy * field.sigma2 / w) * (dy * field.sigma2 / w);
        const double c = 2.0 * field.rho * dx * dy * field.sigma1 * field.sigma2 / (h * w);
        return field.i_max * std::exp(-(a + b + c) / (2.0 * (1.0 - field.rho * field.rho)));
    }
    }
    throw std::logic_error("field_intensity: unreachable");
}

void NoiseParams::validate() const {
    if (!(beta1 > 0.0) || !(beta2 > 0.0))
        throw std::invalid_argument("NoiseParams: beta1 and beta2 must be > 0");
    if (n_min < 0 || n_min > n_max)
        throw std::invalid_argument("NoiseParams: need 0 <= n_min <= n_max");
    if (size_min < 1 || size_min > size_max)
        throw std::invalid_argument("NoiseParams: need 1 <= size_min <= size_max");
    if (brightness_min < 0 || brightness_min > brightness_max || brightness_max > 255)
        throw std::invalid_argument("NoiseParams: brightness range must sit inside [0, 255]");
}

NoiseParams NoiseParams::none() {
    NoiseParams p;
    p.n_min = 0;
    p.n_max = 0;
    return p;
}

std::vector<NoiseRect> sample_noise(const NoiseParams& params, const StripeRegion& region,
                                    Direction direction, Rng& rng) {
    params.validate();
    if (region.height < 1 || region.width < 1)
        throw std::invalid_argument("sample_noise: malformed region");

    const int n = int(rng.uniform_int(params.n_min, params.n_max));
    std::vector<NoiseRect> rects(static_cast<std::size_t>(n));

    for (auto& r : rects) {
        r.height = int(rng.uniform_int(params.size_min, params.size_max));
        r.width = int(rng.uniform_int(params.size_min, params.size_max));
    }

    const double w = region.width;
    const double h = region.height;
    const double mu = region.top_row + h / 2.0;
    const double sigma = h / params.beta2;
    for (auto& r : rects) {
        if (direction == Direction::Front) {
            r.x = int(rng.uniform_int(region.top_row, region.top_row + region.height - 1));
            r.y = int(rng.uniform_int(0, region.width - 1));
        } else {
            // Truncate by resampling: redraw anything that lands outside.
            double y;
            do {
                y = rng.exponential(params.beta1 / w);
            } while (y >= w);
            int yi = int(std::floor(y));
            if (direction == Direction::Right) yi = region.width - 1 - yi;
            r.y = yi;

            double x;
            do {
                x = rng.normal(mu, sigma);
            } while (x < region.top_row || x >= region.top_row + h);
            r.x = int(std::floor(x));
        }
    }

    for (auto& r : rects)
        r.brightness = std::uint8_t(rng.uniform_int(params.brightness_min, params.brightness_max));

    return rects;
}

std::vector<NoiseRect> sample_noise(const NoiseParams& params, const StripeRegion& region,
                                    Direction direction) {
    Rng rng(params.seed);
    return sample_noise(params, region, direction, rng);
}

namespace {

void check_region_in_image(const RgbImage& image, const StripeRegion& region) {
    if (region.width != image.cols)
        throw std::invalid_argument("render_stripe: stripe width must equal the image width");
    if (region.top_row < 0 || region.top_row + region.height > image.rows)
        throw std::invalid_argument("render_stripe: stripe rows exceed image bounds");
}

void add_row(RgbImage& out, const StripeField& field, const ChannelGains& gains, int row,
             double field_x, double gain) {
    for (int c = 0; c < out.cols; ++c) {
        const double intensity = gain * field_intensity(field, field_x, c);
        out.at(row, c, 0) = stripe_add(out.at(row, c, 0), intensity * gains.r);
        out.at(row, c, 1) = stripe_add(out.at(row, c, 1), intensity * gains.g);
        out.at(row, c, 2) = stripe_add(out.at(row, c, 2), intensity * gains.b);
    }
}

} // namespace

RgbImage render_stripe(const RgbImage& image, const StripeField& field, const LaserSpec& spec,
                       const QECurve& curve, const NoiseParams& noise, Rng& rng) {
    field.validate();
    check_region_in_image(image, field.region);
    const ChannelGains unit = curve.at(spec.wavelength_nm);
    const ChannelGains gains{spec.intensity * unit.r, spec.intensity * unit.g,
                             spec.intensity * unit.b};

    RgbImage out = image;
    const int x0 = field.region.top_row;
    for (int r = x0; r < x0 + field.region.height; ++r) add_row(out, field, gains, r, r, 1.0);

    const auto rects = sample_noise(noise, field.region, field.direction, rng);
    const int dom = dominant_channel(unit);
    for (const auto& rect : rects) {
        const int r0 = std::max(rect.x, x0);
        const int r1 = std::min(rect.x + rect.height, x0 + field.region.height);
        const int c0 = std::max(rect.y, 0);
        const int c1 = std::min(rect.y + rect.width, field.region.width);
        for (int r = r0; r < r1; ++r)
            for (int c = c0; c < c1; ++c) out.at(r, c, dom) = rect.brightness;
    }
    return out;
}

RgbImage render_stripe(const RgbImage& image, const StripeField& field, const LaserSpec& spec,
                       const QECurve& curve, const NoiseParams& noise) {
    Rng rng(noise.seed);
    return render_stripe(image, field, spec, curve, noise, rng);
}

RgbImage render_striped_rows(const RgbImage& image, std::span<const RowIllumination> rows,
                             const StripeField& field, const LaserSpec& spec,
                             const QECurve& curve) {
    field.validate();
    if (field.region.width != image.cols)
        throw std::invalid_argument("render_striped_rows: stripe width must equal image width");
    const ChannelGains unit = curve.at(spec.wavelength_nm);
    const ChannelGains gains{spec.intensity * unit.r, spec.intensity * unit.g,
                             spec.intensity * unit.b};

    RgbImage out = image;
    const int lo = field.region.top_row;
    const int hi = field.region.top_row + field.region.height - 1;
    for (const auto& ri : rows) {
        if (ri.gain <= 0.0) continue;
        if (ri.row < 0 || ri.row >= image.rows)
            throw std::invalid_argument("render_striped_rows: row outside image");
        const int slot = std::clamp(ri.slot, lo, hi);
        add_row(out, field, gains, ri.row, slot, ri.gain);
    }
    return out;
}

} // namespace stripesim

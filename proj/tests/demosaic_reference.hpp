// SPDX-License-Identifier: Apache-2.0
//
// Naive reference demosaicers used as the arbiter for the production
// implementations. Kept deliberately literal: per-channel case expressions
// for the nearest-site rule and explicit indicator sums for the averaging
// rule, evaluated in floating point. Do not "optimize" this file; its only
// job is to be obviously correct and independent.
#pragma once

#include <cmath>

#include "stripesim/raster.hpp"

namespace demosaic_reference {

inline stripesim::RgbImage direct(const stripesim::RawBayerFrame& frame) {
    stripesim::RgbImage out;
    out.rows = frame.rows;
    out.cols = frame.cols;
    out.pixels.resize(std::size_t(frame.rows) * std::size_t(frame.cols) * 3);
    auto M = [&](int i, int j) { return double(frame.at(i, j)); };

    for (int i = 0; i < frame.rows; ++i) {
        for (int j = 0; j < frame.cols; ++j) {
            double red, green, blue;
            if (i % 2 == 0 && j % 2 == 0) {
                red = M(i, j);
                green = M(i, j + 1);
                blue = M(i + 1, j + 1);
            } else if (i % 2 != 0 && j % 2 == 0) {
                red = M(i - 1, j);
                green = M(i, j);
                blue = M(i, j + 1);
            } else if (i % 2 == 0 && j % 2 != 0) {
                red = M(i, j - 1);
                green = M(i, j);
                blue = M(i + 1, j);
            } else {
                red = M(i - 1, j - 1);
                green = M(i, j - 1);
                blue = M(i, j);
            }
            out.at(i, j, 0) = std::uint8_t(red);
            out.at(i, j, 1) = std::uint8_t(green);
            out.at(i, j, 2) = std::uint8_t(blue);
        }
    }
    return out;
}

inline stripesim::RgbImage bilinear(const stripesim::RawBayerFrame& frame) {
    const stripesim::RgbImage fallback = direct(frame);
    stripesim::RgbImage out = fallback;
    auto M = [&](int i, int j) { return double(frame.at(i, j)); };
    auto delta = [](int i) { return i % 2; };
    auto indicator = [](bool cond) { return cond ? 1.0 : 0.0; };

    for (int i = 1; i < frame.rows - 1; ++i) {
        for (int j = 1; j < frame.cols - 1; ++j) {
            for (int ch = 0; ch < 3; ++ch) {
                double numerator = 0.0;
                double denominator = 0.0;
                for (int k = -1; k <= 1; ++k) {
                    for (int l = -1; l <= 1; ++l) {
                        const double sel = indicator(delta(i + k) + delta(j + l) == ch);
                        numerator += M(i + k, j + l) * sel;
                        denominator += sel;
                    }
                }
                out.at(i, j, ch) = std::uint8_t(std::floor(numerator / denominator + 0.5));
            }
        }
    }
    return out;
}

} // namespace demosaic_reference

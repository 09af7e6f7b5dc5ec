// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace stripesim {

// Mosaiced sensor readout with a fixed RGGB layout:
//   even row, even col -> R    even row, odd col -> Gr
//   odd row,  even col -> Gb   odd row,  odd col -> B
// Other CFA layouts are rejected at the file boundary, not permuted.
struct RawBayerFrame {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> values; // row-major, rows*cols photosites

    std::uint8_t at(int r, int c) const {
        return values[std::size_t(r) * std::size_t(cols) + std::size_t(c)];
    }

    // Dimensions must be even and >= 2 and the value buffer sized rows*cols.
    void validate() const;
};

// 8-bit-per-channel interleaved RGB image.
struct RgbImage {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels; // row-major, rows*cols*3, RGB order

    static RgbImage filled(int rows, int cols,
                           std::uint8_t r, std::uint8_t g, std::uint8_t b);

    std::uint8_t& at(int r, int c, int ch) {
        return pixels[(std::size_t(r) * std::size_t(cols) + std::size_t(c)) * 3 + std::size_t(ch)];
    }
    std::uint8_t at(int r, int c, int ch) const {
        return pixels[(std::size_t(r) * std::size_t(cols) + std::size_t(c)) * 3 + std::size_t(ch)];
    }

    bool in_bounds(int r, int c) const {
        return r >= 0 && r < rows && c >= 0 && c < cols;
    }

    bool operator==(const RgbImage&) const = default;
};

// Nearest-site interpolation: every output pixel takes each channel from the
// single same-color photosite of its own 2x2 block (odd rows/cols look back
// to the block origin). Throws std::invalid_argument on odd dimensions.
RgbImage demosaic_direct(const RawBayerFrame& frame);

// Neighborhood-average interpolation: interior pixels average all same-color
// photosites of the surrounding 3x3 window (selected by row/col parity),
// rounding half-up; edge pixels fall back to the direct rule. Requires
// rows, cols >= 4 so an interior exists.
RgbImage demosaic_bilinear(const RawBayerFrame& frame);

// Binary PPM (P6, maxval 255). Writing is bit-exact:
// "P6\n<cols> <rows>\n255\n" followed by rows*cols*3 bytes, row-major, RGB.
// Reading accepts whitespace/comments per the PPM spec but only maxval 255.
RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(const RgbImage& image, const std::filesystem::path& path);

// Raw Bayer container: "BAYER8 RGGB <cols> <rows>\n" + rows*cols bytes.
RawBayerFrame read_bayer(const std::filesystem::path& path);
void write_bayer(const RawBayerFrame& frame, const std::filesystem::path& path);

} // namespace stripesim

// SPDX-License-Identifier: Apache-2.0
#include "stripesim/raster.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stripesim/errors.hpp"

namespace stripesim {

void RawBayerFrame::validate() const {
    if (rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0)
        throw std::invalid_argument("RawBayerFrame: dimensions must be even and >= 2, got " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    if (values.size() != std::size_t(rows) * std::size_t(cols))
        throw std::invalid_argument("RawBayerFrame: value buffer size does not match dimensions");
}

RgbImage RgbImage::filled(int rows, int cols,
                          std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("RgbImage: dimensions must be positive");
    RgbImage img;
    img.rows = rows;
    img.cols = cols;
    img.pixels.resize(std::size_t(rows) * std::size_t(cols) * 3);
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
        img.pixels[i] = r;
        img.pixels[i + 1] = g;
        img.pixels[i + 2] = b;
    }
    return img;
}

namespace {

// Per-channel source photosite for the direct rule, by (row, col) parity.
void direct_pixel(const RawBayerFrame& m, int i, int j,
                  std::uint8_t& r, std::uint8_t& g, std::uint8_t& b) {
    const bool oi = (i % 2) != 0;
    const bool oj = (j % 2) != 0;
    if (!oi && !oj) {
        r = m.at(i, j);
        g = m.at(i, j + 1);
        b = m.at(i + 1, j + 1);
    } else if (oi && !oj) {
        r = m.at(i - 1, j);
        g = m.at(i, j);
        b = m.at(i, j + 1);
    } else if (!oi && oj) {
        r = m.at(i, j - 1);
        g = m.at(i, j);
        b = m.at(i + 1, j);
    } else {
        r = m.at(i - 1, j - 1);
        g = m.at(i, j - 1);
        b = m.at(i, j);
    }
}

} // namespace

RgbImage demosaic_direct(const RawBayerFrame& frame) {
    frame.validate();
    RgbImage out;
    out.rows = frame.rows;
    out.cols = frame.cols;
    out.pixels.resize(std::size_t(frame.rows) * std::size_t(frame.cols) * 3);
    for (int i = 0; i < frame.rows; ++i) {
        for (int j = 0; j < frame.cols; ++j) {
            std::uint8_t r, g, b;
            direct_pixel(frame, i, j, r, g, b);
            out.at(i, j, 0) = r;
            out.at(i, j, 1) = g;
            out.at(i, j, 2) = b;
        }
    }
    return out;
}

RgbImage demosaic_bilinear(const RawBayerFrame& frame) {
    frame.validate();
    if (frame.rows < 4 || frame.cols < 4)
        throw std::invalid_argument("demosaic_bilinear: frame too small to have an interior, "
                                    "need at least 4x4");
    RgbImage out;
    out.rows = frame.rows;
    out.cols = frame.cols;
    out.pixels.resize(std::size_t(frame.rows) * std::size_t(frame.cols) * 3);

    for (int i = 0; i < frame.rows; ++i) {
        for (int j = 0; j < frame.cols; ++j) {
            const bool edge = (i == 0 || j == 0 || i == frame.rows - 1 || j == frame.cols - 1);
            if (edge) {
                std::uint8_t r, g, b;
                direct_pixel(frame, i, j, r, g, b);
                out.at(i, j, 0) = r;
                out.at(i, j, 1) = g;
                out.at(i, j, 2) = b;
                continue;
            }
            // Parity of row+col selects the channel a photosite carries:
            // 0 -> R, 1 -> Gr/Gb, 2 -> B.
            long sum[3] = {0, 0, 0};
            long cnt[3] = {0, 0, 0};
            for (int k = -1; k <= 1; ++k) {
                for (int l = -1; l <= 1; ++l) {
                    const int ch = (i + k) % 2 + (j + l) % 2;
                    sum[ch] += frame.at(i + k, j + l);
                    ++cnt[ch];
                }
            }
            for (int ch = 0; ch < 3; ++ch) {
                const long rounded = (2 * sum[ch] + cnt[ch]) / (2 * cnt[ch]); // half-up
                out.at(i, j, ch) = std::uint8_t(rounded);
            }
        }
    }
    return out;
}

namespace {

// Reads the next PPM header token, skipping whitespace and '#' comments.
std::string ppm_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(char(c));
        c = in.get();
    }
    return tok;
}

int parse_dim(const std::string& tok, const char* what, const std::filesystem::path& path) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IoError(path.string() + ": bad " + what + " in header: '" + tok + "'");
    }
}

} // namespace

RgbImage read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image file: " + path.string());

    const std::string magic = ppm_token(in);
    if (magic != "P6")
        throw IoError(path.string() + ": unsupported image format (expected P6, got '" +
                      magic + "')");
    RgbImage img;
    img.cols = parse_dim(ppm_token(in), "width", path);
    img.rows = parse_dim(ppm_token(in), "height", path);
    const std::string maxval = ppm_token(in);
    if (maxval != "255")
        throw IoError(path.string() + ": unsupported maxval '" + maxval + "' (only 255)");
    // ppm_token consumed the single whitespace byte that separates the header
    // from the payload.
    const std::size_t n = std::size_t(img.rows) * std::size_t(img.cols) * 3;
    img.pixels.resize(n);
    in.read(reinterpret_cast<char*>(img.pixels.data()), std::streamsize(n));
    if (std::size_t(in.gcount()) != n)
        throw IoError(path.string() + ": truncated pixel data (expected " + std::to_string(n) +
                      " bytes, got " + std::to_string(in.gcount()) + ")");
    return img;
}

void write_ppm(const RgbImage& image, const std::filesystem::path& path) {
    if (image.rows < 1 || image.cols < 1 ||
        image.pixels.size() != std::size_t(image.rows) * std::size_t(image.cols) * 3)
        throw std::invalid_argument("write_ppm: malformed image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open image file for writing: " + path.string());
    out << "P6\n" << image.cols << ' ' << image.rows << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              std::streamsize(image.pixels.size()));
    if (!out) throw IoError("failed writing image file: " + path.string());
}

RawBayerFrame read_bayer(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open raw frame file: " + path.string());
    std::string header;
    if (!std::getline(in, header))
        throw IoError(path.string() + ": missing header line");
    std::istringstream hs(header);
    std::string magic, pattern, cols_tok, rows_tok;
    hs >> magic >> pattern >> cols_tok >> rows_tok;
    if (magic != "BAYER8")
        throw IoError(path.string() + ": unsupported raw format (expected BAYER8)");
    if (pattern != "RGGB")
        throw IoError(path.string() + ": unsupported CFA pattern '" + pattern +
                      "' (only RGGB)");
    RawBayerFrame frame;
    frame.cols = parse_dim(cols_tok, "width", path);
    frame.rows = parse_dim(rows_tok, "height", path);
    if (frame.rows % 2 != 0 || frame.cols % 2 != 0)
        throw IoError(path.string() + ": dimensions must be even");
    const std::size_t n = std::size_t(frame.rows) * std::size_t(frame.cols);
    frame.values.resize(n);
    in.read(reinterpret_cast<char*>(frame.values.data()), std::streamsize(n));
    if (std::size_t(in.gcount()) != n)
        throw IoError(path.string() + ": truncated photosite data");
    return frame;
}

void write_bayer(const RawBayerFrame& frame, const std::filesystem::path& path) {
    frame.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open raw frame file for writing: " + path.string());
    out << "BAYER8 RGGB " << frame.cols << ' ' << frame.rows << '\n';
    out.write(reinterpret_cast<const char*>(frame.values.data()),
              std::streamsize(frame.values.size()));
    if (!out) throw IoError("failed writing raw frame file: " + path.string());
}

} // namespace stripesim

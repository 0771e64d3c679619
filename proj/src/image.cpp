/*
 * Copyright 2026 AMPCS contributors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#include <ampcs/image.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

namespace ampcs {

const char* to_string(FeatureMethod m) {
    switch (m) {
    case FeatureMethod::Hist: return "HIST";
    case FeatureMethod::Dct: return "DCT";
    case FeatureMethod::Dwt: return "DWT";
    }
    return "?";
}

FeatureMethod feature_method_from_string(std::string_view s) {
    std::string up(s);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (up == "HIST") return FeatureMethod::Hist;
    if (up == "DCT") return FeatureMethod::Dct;
    if (up == "DWT") return FeatureMethod::Dwt;
    throw BadArgument("unknown feature method: " + std::string(s));
}

void validate_image(const GrayImage& img) {
    if (img.width <= 0 || img.height <= 0) {
        throw FormatError("image has zero or negative area");
    }
    const auto expect =
        static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    if (img.pixels.size() != expect) {
        throw FormatError("pixel count does not match dimensions");
    }
}

namespace {

// Reads one whitespace-delimited ASCII token from a binary stream.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF && std::isspace(c)) c = in.get();
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (c != EOF) in.unget();
    return tok;
}

long parse_dim(const std::string& tok, const char* what) {
    if (tok.empty() || tok.size() > 9 ||
        tok.find_first_not_of("0123456789") != std::string::npos) {
        throw FormatError(std::string("bad ") + what + " field: '" + tok + "'");
    }
    return std::stol(tok);
}

// Rounds half away from zero, as llround does.
std::uint8_t clamp_round_u8(double v) {
    const long long r = std::llround(v);
    return static_cast<std::uint8_t>(std::clamp<long long>(r, 0, 255));
}

} // namespace

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open image file: " + path.string());
    }
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        throw FormatError("not a binary PGM (expected magic P5): " + path.string());
    }
    const long w = parse_dim(next_token(in), "width");
    const long h = parse_dim(next_token(in), "height");
    const long maxval = parse_dim(next_token(in), "maxval");
    if (w <= 0 || h <= 0) {
        throw FormatError("zero-area image rejected: " + path.string());
    }
    if (maxval != 255) {
        throw FormatError("unsupported maxval (must be 255): " + path.string());
    }
    in.get(); // single whitespace byte separating header and raster

    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.resize(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
        throw FormatError("truncated pixel data: " + path.string());
    }
    return img;
}

void save_image(const GrayImage& img, const std::filesystem::path& path) {
    validate_image(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open image file for writing: " + path.string());
    }
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) {
        throw IoError("short write: " + path.string());
    }
}

Histogram histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t p : img.pixels) {
        ++h.bins[p];
    }
    h.total = img.pixels.size();
    return h;
}

NormalizedHistogram normalize(const Histogram& h) {
    if (h.total == 0) {
        throw EmptyHistogram("cannot normalize a histogram with zero total");
    }
    const std::uint64_t max_bin = *std::max_element(h.bins.begin(), h.bins.end());
    NormalizedHistogram out;
    const double inv = 1.0 / static_cast<double>(max_bin);
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
        out.values[i] = static_cast<double>(h.bins[i]) * inv;
    }
    return out;
}

std::vector<double> sample_stride(std::span<const double> values, int stride) {
    if (values.size() != 256) {
        throw BadLength("sample_stride expects 256 values");
    }
    if (stride <= 0 || 256 % stride != 0) {
        throw BadStride("stride must be a positive divisor of 256");
    }
    std::vector<double> out;
    out.reserve(256 / static_cast<std::size_t>(stride));
    for (std::size_t j = 0; j * stride < 256; ++j) {
        out.push_back(values[j * stride]);
    }
    return out;
}

GrayImage motion_blur(const GrayImage& img, int extent_px, Axis axis) {
    validate_image(img);
    const int span = axis == Axis::Horizontal ? img.width : img.height;
    if (extent_px < 1 || extent_px > span) {
        throw BadExtent("blur extent out of range for the image");
    }
    if (extent_px == 1) {
        return img;
    }
    // Window centered on the pixel; even extents take the extra tap on the
    // trailing side. Out-of-range taps replicate the border sample.
    const int lo = -(extent_px - 1) / 2;
    const int hi = extent_px / 2;
    const double inv = 1.0 / extent_px;

    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.resize(img.pixels.size());

    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            long long sum = 0;
            for (int k = lo; k <= hi; ++k) {
                int sx = x;
                int sy = y;
                if (axis == Axis::Horizontal) {
                    sx = std::clamp(x + k, 0, img.width - 1);
                } else {
                    sy = std::clamp(y + k, 0, img.height - 1);
                }
                sum += img.at(sx, sy);
            }
            out.pixels[static_cast<std::size_t>(y) * img.width + x] =
                clamp_round_u8(static_cast<double>(sum) * inv);
        }
    }
    return out;
}

GrayImage brightness_shift(const GrayImage& img, double factor) {
    validate_image(img);
    if (!(factor >= -1.0 && factor <= 1.0)) {
        throw BadFactor("brightness factor must lie in [-1, 1]");
    }
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.resize(img.pixels.size());
    const double gain = 1.0 + factor;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out.pixels[i] = clamp_round_u8(img.pixels[i] * gain);
    }
    return out;
}

} // namespace ampcs

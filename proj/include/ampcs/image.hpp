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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include <ampcs/errors.hpp>

namespace ampcs {

enum class Axis { Horizontal, Vertical };

enum class FeatureMethod { Hist, Dct, Dwt };

const char* to_string(FeatureMethod m);
FeatureMethod feature_method_from_string(std::string_view s);

/// 8-bit single-channel raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t size() const { return pixels.size(); }
    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    bool operator==(const GrayImage&) const = default;
};

/// Throws FormatError unless dimensions are positive and consistent with the
/// pixel count.
void validate_image(const GrayImage& img);

/// 256-bin intensity counts; total equals the source pixel count.
struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

/// Histogram scaled so the tallest bin equals 1.0.
struct NormalizedHistogram {
    std::array<double, 256> values{};
};

/// Fixed-length real vector fed to the network, tagged with the method that
/// produced it. Components lie in [-1, 1].
struct FeatureVector {
    FeatureMethod method = FeatureMethod::Hist;
    std::vector<double> components;
};

// Binary portable graymap ("P5"), maxval 255. The writer emits exactly
// "P5\n<w> <h>\n255\n" followed by width*height bytes.
GrayImage load_image(const std::filesystem::path& path);
void save_image(const GrayImage& img, const std::filesystem::path& path);

Histogram histogram(const GrayImage& img);

NormalizedHistogram normalize(const Histogram& h);

/// Keeps every stride-th value: output[j] = values[j * stride].
/// stride must divide 256; the default protocol stride is 8 (32 outputs).
std::vector<double> sample_stride(std::span<const double> values, int stride);

/// 1-D box mean of extent_px samples along the given axis, window centered
/// on each pixel, borders handled by clamped replication. Models the smear
/// of a conveyor moving during exposure.
GrayImage motion_blur(const GrayImage& img, int extent_px, Axis axis);

/// Multiplicative gain: pixel -> clamp(round(pixel * (1 + factor))).
/// factor must lie in [-1, 1].
GrayImage brightness_shift(const GrayImage& img, double factor);

} // namespace ampcs

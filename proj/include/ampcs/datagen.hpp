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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <ampcs/image.hpp>

namespace ampcs {

struct IntensityMode {
    double mean = 128.0;  // gray level in [0, 255]
    double stddev = 1.0;  // > 0 allowed to be 0 for a constant mode
    double weight = 1.0;  // mode weights sum to 1
};

/// Procedural texture class: a Gaussian intensity mixture with an optional
/// spatial correlation length. Only the histogram statistics matter to the
/// classifier, so the spatial model stays deliberately simple.
struct SyntheticClassSpec {
    std::string name;
    std::vector<IntensityMode> modes;
    int spatial_grain = 1; // box-smoothing width in pixels

    void validate() const; // throws BadSpec
};

struct DatasetManifest {
    std::vector<SyntheticClassSpec> classes;
    int train_per_class = 300;
    int test_per_class = 40;
    int width = 128;
    int height = 128;
    int blur_extent = 9;          // applied to every sample
    double brightness_band = 0.10; // gain drawn from [-band, +band]
    double brightness_prob = 0.5;  // fraction of samples receiving the gain
    std::uint64_t seed = 1;

    void validate() const;
};

/// Pixels drawn independently from the class mixture, box-smoothed at the
/// grain scale, rounded and clamped to [0, 255]. Deterministic per seed.
GrayImage generate_image(const SyntheticClassSpec& spec, int width, int height,
                         std::uint64_t seed);

/// Emits <out>/train/<class>/... and <out>/test/<class>/... PGM files with
/// the manifest's augmentation applied (motion blur on every sample,
/// brightness gain on the configured fraction). Train and test streams are
/// seeded independently, so reruns are byte-identical and the splits are
/// disjoint.
void generate_dataset(const DatasetManifest& manifest, const std::filesystem::path& out_dir);

/// Mean normalized histogram per class, then pairwise Pearson correlations.
/// The diagonal is exactly 1.
std::vector<std::vector<double>> correlation_matrix(const std::filesystem::path& dataset_dir);

// JSON manifest, key names: classes[].name, classes[].modes[].{mean,stddev,
// weight}, classes[].spatial_grain (or a top-level spatial_grain default),
// train_per_class, test_per_class, blur_extent, brightness_band,
// brightness_prob, seed, width, height.
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Ten-class preset whose class histograms are strongly correlated across
/// classes (minimum pairwise correlation above 0.7): every class blends a
/// dominant dark anchor with the same bright mode, and only the blend
/// weight drifts from class to class, so the motion blur leaves a comb of
/// shared narrow peaks whose height profile encodes the class. The regime
/// where the wavelet features pay off.
DatasetManifest hard_preset(int train_per_class = 300, int test_per_class = 40);

/// Ten-class preset with well-separated single-mode histograms (maximum
/// pairwise correlation below 0.4).
DatasetManifest easy_preset(int train_per_class = 300, int test_per_class = 40);

} // namespace ampcs

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

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <ampcs/decision.hpp>
#include <ampcs/image.hpp>
#include <ampcs/mlp.hpp>

namespace ampcs {

/// Trained network plus everything the runtime needs to execute it: the
/// feature method it was trained with and the ordered class names. The
/// serialized form is the data block handed from the trainer to the runtime.
struct WeightBlock {
    int format_version = 1;
    FeatureMethod method = FeatureMethod::Hist;
    std::vector<std::string> class_names;
    MlpNetwork net;

    /// 256 / input layer width; the sampling the block was trained with.
    int stride() const;
};

// Weight-block file, line-oriented UTF-8:
//   AMPCS-WB v1
//   method <HIST|DCT|DWT>
//   topology <in> <hidden...> <out>
//   classes <name0> <name1> ...
//   layer <idx> weights <w00> <w01> ...
//   layer <idx> biases <b0> ...
// Reals carry 17 significant digits, so load(save(x)) is bit-identical.
void save_weight_block(const MlpNetwork& net, FeatureMethod method,
                       std::span<const std::string> class_names,
                       const std::filesystem::path& path);
WeightBlock load_weight_block(const std::filesystem::path& path);

/// Per-stage timings of one scan cycle plus the decision it produced.
/// Durations are measured with a monotonic clock; the value path (outputs,
/// winner) depends only on the block and the image.
struct ScanCycleReport {
    double acquire_us = 0.0;   // image copy into the cycle's process image
    double histogram_us = 0.0; // counting + normalization
    double transform_us = 0.0; // method-specific feature computation
    double forward_us = 0.0;   // network evaluation
    double decide_us = 0.0;    // final decision logic
    double total_ms = 0.0;     // whole cycle including loop overhead
    ClassificationResult result;

    double stage_sum_us() const {
        return acquire_us + histogram_us + transform_us + forward_us + decide_us;
    }
};

/// One unconditional cycle over an in-memory image.
ScanCycleReport run_scan_cycle(const WeightBlock& block, const GrayImage& img);

/// Same, loading the image from disk; the load is timed as the acquire stage.
ScanCycleReport run_scan_cycle_file(const WeightBlock& block,
                                    const std::filesystem::path& path);

/// Time-controlled cyclic execution: one cycle per period. A cycle that
/// outlasts the period is counted as an overrun and execution continues
/// with the next frame immediately.
struct CyclicReport {
    int cycles = 0;
    int overruns = 0;
    std::vector<ScanCycleReport> reports;
};

CyclicReport run_cyclic(const WeightBlock& block, std::span<const GrayImage> frames,
                        std::chrono::microseconds period);

struct BatchSummary {
    int correct = 0;
    int total = 0;
    double accuracy = 0.0;
    double max_ms = 0.0;
    double mean_ms = 0.0;
};

/// Runs a scan cycle over every sample of a class-directory dataset.
/// When manifest_out is set, writes one CSV row per sample
/// (sample_id,true_class,winner,margin,correct). The observer, when set,
/// sees each sample's report as it completes.
using BatchObserver =
    std::function<void(const std::string& sample_id, int true_class,
                       const ScanCycleReport& report)>;

BatchSummary run_batch(const WeightBlock& block, const std::filesystem::path& dataset_dir,
                       const std::optional<std::filesystem::path>& manifest_out,
                       const BatchObserver& observer = {});

} // namespace ampcs

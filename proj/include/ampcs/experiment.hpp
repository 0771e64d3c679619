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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <ampcs/mlp.hpp>
#include <ampcs/plcsim.hpp>

namespace ampcs {

/// One experiment cell: feature method x hidden layer width x target MSE.
struct SweepCell {
    FeatureMethod method = FeatureMethod::Hist;
    int hidden = 50;
    double target_mse = 0.1;
};

struct SweepRow {
    SweepCell cell;
    int correct = 0;
    int total = 0;
    double accuracy = 0.0;
    double final_mse = 0.0;
    bool converged = false;
    int epochs = 0;
    std::string status = "ok"; // error text when the cell failed
    double max_ms = 0.0;       // timing columns stay last in the CSV
    double mean_ms = 0.0;
};

struct SweepConfig {
    double learning_rate = 0.02;
    int max_epochs = 2000;
    std::uint64_t seed = 1;
    int stride = 8;
    bool shuffle = true;
    int threads = 0; // 0 = hardware concurrency
};

/// Trains one network per cell on <root>/train from a fresh seeded
/// initialization and evaluates it over <root>/test with full scan cycles.
/// Cells run in a worker pool; results come back in cell order and a
/// failing cell reports its error in `status` without aborting the sweep.
std::vector<SweepRow> run_sweep(const std::filesystem::path& dataset_root,
                                std::span<const SweepCell> cells,
                                const SweepConfig& config);

/// Builds a feature dataset (+1/-1 target coding) from a class-directory
/// split.
Dataset load_feature_dataset(const std::filesystem::path& split_dir, FeatureMethod method,
                             int stride, std::vector<std::string>* class_names = nullptr);

/// Trains one cell in isolation and returns the trained block plus report.
struct TrainOutcome {
    WeightBlock block;
    TrainReport report;
};
TrainOutcome train_cell(const std::filesystem::path& train_dir, const SweepCell& cell,
                        const SweepConfig& config);

/// Header method,hidden,mse,correct,total,accuracy,final_mse,converged,
/// epochs,status,max_ms,mean_ms; all non-timing columns are deterministic
/// for a fixed (dataset, cells, config).
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

} // namespace ampcs

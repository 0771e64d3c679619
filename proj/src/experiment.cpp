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

#include <ampcs/experiment.hpp>

#include <atomic>
#include <bit>
#include <cstdio>
#include <thread>

#include <ampcs/dataset.hpp>
#include <ampcs/features.hpp>
#include <ampcs/rng.hpp>

namespace ampcs {

namespace fs = std::filesystem;

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t cell_seed(const SweepConfig& config, const SweepCell& cell) {
    return mix_seed(config.seed, static_cast<std::uint64_t>(cell.method),
                    static_cast<std::uint64_t>(cell.hidden),
                    std::bit_cast<std::uint64_t>(cell.target_mse));
}

} // namespace

Dataset load_feature_dataset(const fs::path& split_dir, FeatureMethod method, int stride,
                             std::vector<std::string>* class_names) {
    const DatasetIndex index = scan_dataset(split_dir);
    if (class_names) {
        *class_names = index.class_names;
    }
    const int k = static_cast<int>(index.class_names.size());

    Dataset dataset;
    dataset.reserve(index.entries.size());
    for (const DatasetEntry& entry : index.entries) {
        TrainSample sample;
        sample.input = extract_features(load_image(entry.path), method, stride).components;
        sample.target.assign(static_cast<std::size_t>(k), -1.0);
        sample.target[static_cast<std::size_t>(entry.class_index)] = 1.0;
        dataset.push_back(std::move(sample));
    }
    return dataset;
}

TrainOutcome train_cell(const fs::path& train_dir, const SweepCell& cell,
                        const SweepConfig& config) {
    std::vector<std::string> class_names;
    const Dataset dataset =
        load_feature_dataset(train_dir, cell.method, config.stride, &class_names);

    Topology topo;
    topo.input_size = feature_length(config.stride);
    topo.hidden_sizes = {cell.hidden};
    topo.output_size = static_cast<int>(class_names.size());

    TrainOutcome outcome;
    outcome.block.method = cell.method;
    outcome.block.class_names = class_names;
    outcome.block.net = init_network(topo, cell_seed(config, cell));

    TrainConfig tc;
    tc.learning_rate = config.learning_rate;
    tc.target_mse = cell.target_mse;
    tc.max_iterations = config.max_epochs;
    tc.seed = mix_seed(cell_seed(config, cell), 0x5eedULL);
    tc.shuffle = config.shuffle;
    outcome.report = train(outcome.block.net, dataset, tc);
    return outcome;
}

std::vector<SweepRow> run_sweep(const fs::path& dataset_root,
                                std::span<const SweepCell> cells,
                                const SweepConfig& config) {
    if (cells.empty()) {
        throw BadArgument("sweep needs at least one cell");
    }
    const fs::path train_dir = resolve_split(dataset_root, "train");
    const fs::path test_dir = resolve_split(dataset_root, "test");

    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) break;
            SweepRow& row = rows[i];
            row.cell = cells[i];
            try {
                const TrainOutcome outcome = train_cell(train_dir, cells[i], config);
                row.final_mse = outcome.report.final_mse;
                row.converged = outcome.report.converged;
                row.epochs = outcome.report.iterations_run;
                const BatchSummary summary =
                    run_batch(outcome.block, test_dir, std::nullopt);
                row.correct = summary.correct;
                row.total = summary.total;
                row.accuracy = summary.accuracy;
                row.max_ms = summary.max_ms;
                row.mean_ms = summary.mean_ms;
            } catch (const std::exception& e) {
                row.status = e.what();
            }
        }
    };

    unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                            : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min<unsigned>(n_threads,
                                                static_cast<unsigned>(cells.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "method,hidden,mse,correct,total,accuracy,final_mse,converged,epochs,status,"
           "max_ms,mean_ms\n";
    for (const SweepRow& row : rows) {
        std::string status = row.status;
        for (char& c : status) {
            if (c == ',' || c == '\n') c = ';';
        }
        char max_ms[32], mean_ms[32];
        std::snprintf(max_ms, sizeof max_ms, "%.3f", row.max_ms);
        std::snprintf(mean_ms, sizeof mean_ms, "%.3f", row.mean_ms);
        out << to_string(row.cell.method) << ',' << row.cell.hidden << ','
            << g17(row.cell.target_mse) << ',' << row.correct << ',' << row.total << ','
            << g17(row.accuracy) << ',' << g17(row.final_mse) << ','
            << (row.converged ? 1 : 0) << ',' << row.epochs << ',' << status << ','
            << max_ms << ',' << mean_ms << '\n';
    }
}

} // namespace ampcs

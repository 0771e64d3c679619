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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ampcs/dataset.hpp>
#include <ampcs/datagen.hpp>
#include <ampcs/experiment.hpp>
#include <ampcs/plcsim.hpp>

namespace fs = std::filesystem;
using namespace ampcs;

// Exit codes: 0 success, 2 usage/config, 3 I/O or format, 4 training did
// not converge.
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoConverge = 4;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename Fn>
int run_guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const NonFinite& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoConverge;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const VersionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file: " + path.string());
    }
    return out;
}

int cmd_gen(const std::string& manifest_path, const std::string& preset,
            const std::string& out_dir, const std::string& emit_manifest,
            int train_override, int test_override) {
    DatasetManifest manifest;
    if (!preset.empty()) {
        manifest = preset == "hard" ? hard_preset() : easy_preset();
    } else {
        if (!fs::exists(manifest_path)) {
            throw BadArgument("manifest not found: " + manifest_path);
        }
        manifest = load_manifest(manifest_path);
    }
    if (train_override > 0) manifest.train_per_class = train_override;
    if (test_override > 0) manifest.test_per_class = test_override;

    if (!emit_manifest.empty()) {
        save_manifest(manifest, emit_manifest);
    }
    generate_dataset(manifest, out_dir);
    std::cout << "generated " << manifest.classes.size() << " classes x ("
              << manifest.train_per_class << " train + " << manifest.test_per_class
              << " test) under " << out_dir << '\n';
    return kExitOk;
}

int cmd_train(const std::string& dataset_dir, const std::string& method_name, int hidden,
              double target_mse, double lr, std::uint64_t seed, int stride, int epochs,
              bool no_shuffle, const std::string& out_path, const std::string& trace_path,
              const std::string& surface_path, int surface_i, int surface_j, int surface_k,
              int surface_grid) {
    SweepCell cell;
    cell.method = feature_method_from_string(method_name);
    cell.hidden = hidden;
    cell.target_mse = target_mse;

    SweepConfig config;
    config.learning_rate = lr;
    config.max_epochs = epochs;
    config.seed = seed;
    config.stride = stride;
    config.shuffle = !no_shuffle;

    const fs::path train_dir = resolve_split(dataset_dir, "train");
    const TrainOutcome outcome = train_cell(train_dir, cell, config);

    save_weight_block(outcome.block.net, outcome.block.method, outcome.block.class_names,
                      out_path);

    if (!trace_path.empty()) {
        auto trace = open_out(trace_path);
        write_mse_trace_csv(trace, outcome.report);
    }
    if (!surface_path.empty()) {
        FeatureVector baseline;
        baseline.components.assign(
            static_cast<std::size_t>(outcome.block.net.topology().input_size), 0.0);
        const auto surface = export_surface(outcome.block.net, surface_i, surface_j,
                                            surface_k, surface_grid, baseline);
        auto out = open_out(surface_path);
        write_surface_csv(out, surface);
    }

    std::cout << "method=" << to_string(outcome.block.method) << " hidden=" << hidden
              << " target_mse=" << g17(target_mse)
              << " final_mse=" << g17(outcome.report.final_mse)
              << " epochs=" << outcome.report.iterations_run
              << " converged=" << (outcome.report.converged ? 1 : 0) << '\n';
    if (!outcome.report.converged) {
        std::cerr << "warning: target MSE not reached within " << epochs
                  << " epochs; weight block written anyway\n";
        return kExitNoConverge;
    }
    return kExitOk;
}

int cmd_classify(const std::string& block_path, const std::string& input_path,
                 const std::string& out_path) {
    const WeightBlock block = load_weight_block(block_path);

    if (fs::is_directory(input_path)) {
        bool has_class_dirs = false;
        for (const auto& entry : fs::directory_iterator(input_path)) {
            if (entry.is_directory()) {
                has_class_dirs = true;
                break;
            }
        }
        if (has_class_dirs) {
            // Labeled dataset: full batch with accuracy and manifest CSV.
            std::optional<fs::path> manifest;
            if (!out_path.empty()) manifest = fs::path(out_path);
            const BatchSummary summary = run_batch(
                block, input_path, manifest,
                [](const std::string& sample_id, int, const ScanCycleReport& report) {
                    std::cout << sample_id << ',' << report.result.winner << ','
                              << report.result.class_name << ','
                              << g17(report.result.margin) << '\n';
                });
            std::cout << "accuracy " << summary.correct << '/' << summary.total << " = "
                      << g17(summary.accuracy) << ", max cycle "
                      << g17(summary.max_ms) << " ms\n";
            return kExitOk;
        }
        // Flat directory of samples, no ground truth.
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(input_path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw IoError("no .pgm samples in " + input_path);
        }
        std::ofstream out;
        if (!out_path.empty()) out = open_out(out_path);
        for (const auto& file : files) {
            const ScanCycleReport report = run_scan_cycle_file(block, file);
            const std::string row = file.filename().string() + ',' +
                                    std::to_string(report.result.winner) + ',' +
                                    report.result.class_name + ',' +
                                    g17(report.result.margin);
            std::cout << row << '\n';
            if (out.is_open()) out << row << '\n';
        }
        return kExitOk;
    }

    const ScanCycleReport report = run_scan_cycle_file(block, input_path);
    std::cout << fs::path(input_path).filename().string() << ',' << report.result.winner
              << ',' << report.result.class_name << ',' << g17(report.result.margin)
              << '\n';
    return kExitOk;
}

int cmd_sweep(const std::string& dataset_dir, const std::vector<std::string>& methods,
              const std::vector<int>& hidden_list, const std::vector<double>& mse_list,
              double lr, std::uint64_t seed, int stride, int epochs, int threads,
              const std::string& out_path) {
    std::vector<SweepCell> cells;
    for (const std::string& method_name : methods) {
        const FeatureMethod method = feature_method_from_string(method_name);
        for (int hidden : hidden_list) {
            if (hidden < 1) {
                throw BadArgument("hidden layer sizes must be positive");
            }
            for (double target : mse_list) {
                cells.push_back({method, hidden, target});
            }
        }
    }

    SweepConfig config;
    config.learning_rate = lr;
    config.max_epochs = epochs;
    config.seed = seed;
    config.stride = stride;
    config.threads = threads;

    const auto rows = run_sweep(dataset_dir, cells, config);
    auto out = open_out(out_path);
    write_sweep_csv(out, rows);

    for (const SweepRow& row : rows) {
        std::cout << to_string(row.cell.method) << " hidden=" << row.cell.hidden
                  << " mse=" << g17(row.cell.target_mse) << " -> " << row.correct << '/'
                  << row.total << " (" << row.status << ")\n";
    }
    return kExitOk;
}

int cmd_recommend(const std::string& dataset_dir, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw BadArgument("threshold must lie in (0, 1)");
    }
    const fs::path split = resolve_split(dataset_dir, "train");
    const DatasetIndex index = scan_dataset(split);
    if (index.class_names.size() < 2) {
        throw BadArgument("method recommendation needs at least two classes");
    }
    const auto corr = correlation_matrix(split);

    double peak = -1.0;
    std::cout << "cross-correlation matrix (" << corr.size() << " classes):\n";
    for (std::size_t i = 0; i < corr.size(); ++i) {
        std::cout << index.class_names[i] << ':';
        for (std::size_t j = 0; j < corr.size(); ++j) {
            char cell[16];
            std::snprintf(cell, sizeof cell, " %.6f", corr[i][j]);
            std::cout << cell;
            if (i != j) peak = std::max(peak, corr[i][j]);
        }
        std::cout << '\n';
    }
    std::cout << "max pairwise correlation: ";
    char peak_str[16];
    std::snprintf(peak_str, sizeof peak_str, "%.6f", peak);
    std::cout << peak_str << " (threshold " << threshold << ")\n";
    std::cout << "recommendation: "
              << (peak > threshold ? "DWT" : "HIST_OR_DCT") << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Texture classification pipeline: histogram/DCT/DWT features over "
                 "grayscale images, a tanh MLP classifier, and a PLC-style scan-cycle "
                 "runtime"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic texture dataset");
    std::string gen_manifest, gen_preset, gen_out, gen_emit;
    int gen_train = 0, gen_test = 0;
    gen->add_option("manifest", gen_manifest, "JSON dataset manifest");
    gen->add_option("--preset", gen_preset, "built-in preset instead of a manifest")
        ->check(CLI::IsMember({"hard", "easy"}));
    gen->add_option("--out", gen_out, "output dataset directory")->required();
    gen->add_option("--emit-manifest", gen_emit, "also write the effective manifest JSON");
    gen->add_option("--train-per-class", gen_train, "override train sample count");
    gen->add_option("--test-per-class", gen_test, "override test sample count");

    // train
    auto* train = app.add_subcommand("train", "Train a network and write a weight block");
    std::string tr_dataset, tr_method, tr_out, tr_trace, tr_surface;
    int tr_hidden = 50, tr_stride = 8, tr_epochs = 32000;
    int tr_si = 16, tr_sj = 27, tr_sk = 3, tr_grid = 41;
    double tr_mse = 0.16, tr_lr = 0.01;
    std::uint64_t tr_seed = 0;
    bool tr_no_shuffle = false;
    train->add_option("dataset", tr_dataset, "dataset root (or train split directory)")
        ->required();
    train->add_option("--method", tr_method, "feature method: hist, dct or dwt")->required();
    train->add_option("--hidden", tr_hidden, "hidden layer width");
    train->add_option("--mse", tr_mse, "target mean square error");
    train->add_option("--lr", tr_lr, "learning rate");
    train->add_option("--seed", tr_seed, "random seed")->required();
    train->add_option("--stride", tr_stride, "histogram sampling stride");
    train->add_option("--epochs", tr_epochs, "epoch budget");
    train->add_flag("--no-shuffle", tr_no_shuffle, "keep sample order fixed");
    train->add_option("--out", tr_out, "weight block output path")->required();
    train->add_option("--trace", tr_trace, "write the epoch,mse trace CSV here");
    train->add_option("--surface", tr_surface, "write an output-surface CSV here");
    train->add_option("--surface-i", tr_si, "first swept input index");
    train->add_option("--surface-j", tr_sj, "second swept input index");
    train->add_option("--surface-k", tr_sk, "observed output index");
    train->add_option("--surface-grid", tr_grid, "surface grid resolution");

    // classify
    auto* classify = app.add_subcommand("classify", "Classify an image, a directory of "
                                                    "images, or a labeled dataset");
    std::string cl_block, cl_input, cl_out;
    classify->add_option("block", cl_block, "weight block path")->required();
    classify->add_option("input", cl_input, "image file or directory")->required();
    classify->add_option("--out", cl_out, "write the result CSV here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Train and evaluate a method x hidden x "
                                              "MSE grid");
    std::string sw_dataset, sw_out;
    std::vector<std::string> sw_methods{"hist", "dct", "dwt"};
    std::vector<int> sw_hidden;
    std::vector<double> sw_mse;
    double sw_lr = 0.02;
    std::uint64_t sw_seed = 0;
    int sw_stride = 8, sw_epochs = 2000, sw_threads = 0;
    sweep->add_option("dataset", sw_dataset, "dataset root with train/ and test/")
        ->required();
    sweep->add_option("--methods", sw_methods, "feature methods to sweep")
        ->delimiter(',');
    sweep->add_option("--hidden", sw_hidden, "hidden layer widths")
        ->delimiter(',')
        ->required();
    sweep->add_option("--mse", sw_mse, "target MSE values")->delimiter(',')->required();
    sweep->add_option("--lr", sw_lr, "learning rate");
    sweep->add_option("--seed", sw_seed, "random seed")->required();
    sweep->add_option("--stride", sw_stride, "histogram sampling stride");
    sweep->add_option("--epochs", sw_epochs, "epoch budget per cell");
    sweep->add_option("--threads", sw_threads, "worker threads (0 = hardware)");
    sweep->add_option("--out", sw_out, "sweep CSV output path")->required();

    // recommend
    auto* recommend = app.add_subcommand("recommend", "Inspect class histogram "
                                                      "cross-correlation and pick a method");
    std::string rc_dataset;
    double rc_threshold = 0.65;
    recommend->add_option("dataset", rc_dataset, "dataset root or split directory")
        ->required();
    recommend->add_option("--threshold", rc_threshold, "correlation threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (gen->parsed()) {
        if (gen_manifest.empty() == gen_preset.empty()) {
            std::cerr << "error: pass exactly one of <manifest> or --preset\n";
            return kExitUsage;
        }
        return run_guarded([&] {
            return cmd_gen(gen_manifest, gen_preset, gen_out, gen_emit, gen_train, gen_test);
        });
    }
    if (train->parsed()) {
        return run_guarded([&] {
            return cmd_train(tr_dataset, tr_method, tr_hidden, tr_mse, tr_lr, tr_seed,
                             tr_stride, tr_epochs, tr_no_shuffle, tr_out, tr_trace,
                             tr_surface, tr_si, tr_sj, tr_sk, tr_grid);
        });
    }
    if (classify->parsed()) {
        return run_guarded([&] { return cmd_classify(cl_block, cl_input, cl_out); });
    }
    if (sweep->parsed()) {
        return run_guarded([&] {
            return cmd_sweep(sw_dataset, sw_methods, sw_hidden, sw_mse, sw_lr, sw_seed,
                             sw_stride, sw_epochs, sw_threads, sw_out);
        });
    }
    if (recommend->parsed()) {
        return run_guarded([&] { return cmd_recommend(rc_dataset, rc_threshold); });
    }
    return kExitUsage;
}

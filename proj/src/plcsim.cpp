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

#include <ampcs/plcsim.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <ampcs/dataset.hpp>
#include <ampcs/features.hpp>

namespace ampcs {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kMagic = "AMPCS-WB";

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double us_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::micro>(b - a).count();
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_real(const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw FormatError("bad real literal in weight block: '" + tok + "'");
    }
    return v;
}

int parse_int(const std::string& tok) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || v < 0 || v > 1000000) {
        throw FormatError("bad integer literal in weight block: '" + tok + "'");
    }
    return static_cast<int>(v);
}

std::string read_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError(std::string("weight block truncated before ") + what);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

int WeightBlock::stride() const {
    const int in = net.topology().input_size;
    if (in < 1 || 256 % in != 0) {
        throw FormatError("weight block input width does not divide 256");
    }
    return 256 / in;
}

void save_weight_block(const MlpNetwork& net, FeatureMethod method,
                       std::span<const std::string> class_names, const fs::path& path) {
    if (class_names.size() != static_cast<std::size_t>(net.topology().output_size)) {
        throw LengthMismatch("class name count does not match the output layer");
    }
    for (const auto& name : class_names) {
        if (name.empty() ||
            std::any_of(name.begin(), name.end(),
                        [](unsigned char c) { return std::isspace(c); })) {
            throw BadArgument("class names must be nonempty and free of whitespace");
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open weight block for writing: " + path.string());
    }
    out << kMagic << " v1\n";
    out << "method " << to_string(method) << '\n';
    out << "topology " << net.topology().input_size;
    for (int h : net.topology().hidden_sizes) out << ' ' << h;
    out << ' ' << net.topology().output_size << '\n';
    out << "classes";
    for (const auto& name : class_names) out << ' ' << name;
    out << '\n';
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        const Layer& layer = net.layers()[l];
        out << "layer " << l << " weights";
        for (double w : layer.weights) out << ' ' << g17(w);
        out << '\n';
        out << "layer " << l << " biases";
        for (double b : layer.biases) out << ' ' << g17(b);
        out << '\n';
    }
    if (!out) {
        throw IoError("short write: " + path.string());
    }
}

WeightBlock load_weight_block(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open weight block: " + path.string());
    }

    const auto header = split_ws(read_line(in, "header"));
    if (header.size() != 2 || header[0] != kMagic) {
        throw FormatError("not a weight block file: " + path.string());
    }
    if (header[1] != "v1") {
        throw VersionError("unsupported weight block version: " + header[1]);
    }

    const auto method_line = split_ws(read_line(in, "method"));
    if (method_line.size() != 2 || method_line[0] != "method") {
        throw FormatError("missing method line");
    }

    const auto topo_line = split_ws(read_line(in, "topology"));
    if (topo_line.size() < 3 || topo_line[0] != "topology") {
        throw FormatError("missing or incomplete topology line");
    }
    Topology topo;
    topo.input_size = parse_int(topo_line[1]);
    for (std::size_t i = 2; i + 1 < topo_line.size(); ++i) {
        topo.hidden_sizes.push_back(parse_int(topo_line[i]));
    }
    topo.output_size = parse_int(topo_line.back());
    try {
        topo.validate();
    } catch (const BadTopology& e) {
        throw FormatError(std::string("invalid topology in weight block: ") + e.what());
    }

    auto classes_line = split_ws(read_line(in, "classes"));
    if (classes_line.empty() || classes_line[0] != "classes") {
        throw FormatError("missing classes line");
    }
    classes_line.erase(classes_line.begin());
    if (classes_line.size() != static_cast<std::size_t>(topo.output_size)) {
        throw FormatError("class name count does not match the output layer");
    }

    WeightBlock block;
    block.method = feature_method_from_string(method_line[1]);
    block.class_names = std::move(classes_line);
    block.net = MlpNetwork(topo);

    for (std::size_t l = 0; l < block.net.layers().size(); ++l) {
        Layer& layer = block.net.layers()[l];
        for (const char* kind : {"weights", "biases"}) {
            const auto toks = split_ws(read_line(in, kind));
            auto& dst = kind[0] == 'w' ? layer.weights : layer.biases;
            if (toks.size() != 3 + dst.size() || toks[0] != "layer" ||
                parse_int(toks[1]) != static_cast<int>(l) || toks[2] != kind) {
                throw FormatError("malformed or truncated layer line");
            }
            for (std::size_t i = 0; i < dst.size(); ++i) {
                dst[i] = parse_real(toks[3 + i]);
            }
        }
    }
    return block;
}

ScanCycleReport run_scan_cycle(const WeightBlock& block, const GrayImage& img) {
    const int stride = block.stride();
    ScanCycleReport report;

    const auto t_begin = Clock::now();

    // Input image update: copy the raster into the cycle's process image.
    GrayImage process_image = img;
    const auto t_acquired = Clock::now();

    const NormalizedHistogram norm = normalize(histogram(process_image));
    const auto t_histogram = Clock::now();

    const FeatureVector features = extract_features(norm, block.method, stride);
    const auto t_transform = Clock::now();

    const std::vector<double> outputs = block.net.forward(features);
    const auto t_forward = Clock::now();

    report.result = decide(outputs, block.class_names);
    const auto t_decided = Clock::now();

    report.acquire_us = us_between(t_begin, t_acquired);
    report.histogram_us = us_between(t_acquired, t_histogram);
    report.transform_us = us_between(t_histogram, t_transform);
    report.forward_us = us_between(t_transform, t_forward);
    report.decide_us = us_between(t_forward, t_decided);
    report.total_ms = us_between(t_begin, Clock::now()) / 1000.0;
    return report;
}

ScanCycleReport run_scan_cycle_file(const WeightBlock& block, const fs::path& path) {
    const auto t_begin = Clock::now();
    const GrayImage img = load_image(path);
    const auto t_loaded = Clock::now();

    ScanCycleReport report = run_scan_cycle(block, img);
    report.acquire_us += us_between(t_begin, t_loaded);
    report.total_ms = us_between(t_begin, Clock::now()) / 1000.0;
    return report;
}

CyclicReport run_cyclic(const WeightBlock& block, std::span<const GrayImage> frames,
                        std::chrono::microseconds period) {
    CyclicReport cyc;
    for (const GrayImage& frame : frames) {
        const auto deadline = Clock::now() + period;
        cyc.reports.push_back(run_scan_cycle(block, frame));
        ++cyc.cycles;
        const auto now = Clock::now();
        if (now > deadline) {
            ++cyc.overruns; // log-and-continue
        } else {
            std::this_thread::sleep_until(deadline);
        }
    }
    return cyc;
}

BatchSummary run_batch(const WeightBlock& block, const fs::path& dataset_dir,
                       const std::optional<fs::path>& manifest_out,
                       const BatchObserver& observer) {
    const DatasetIndex index = scan_dataset(dataset_dir);

    std::ofstream manifest;
    if (manifest_out) {
        manifest.open(*manifest_out, std::ios::binary | std::ios::trunc);
        if (!manifest) {
            throw IoError("cannot open manifest for writing: " + manifest_out->string());
        }
        write_result_csv_header(manifest);
    }

    BatchSummary summary;
    double total_ms = 0.0;
    for (const DatasetEntry& entry : index.entries) {
        const auto it = std::find(block.class_names.begin(), block.class_names.end(),
                                  entry.class_name);
        if (it == block.class_names.end()) {
            throw BadArgument("dataset class '" + entry.class_name +
                              "' is not known to the weight block");
        }
        const int true_class = static_cast<int>(it - block.class_names.begin());

        const ScanCycleReport report = run_scan_cycle_file(block, entry.path);
        if (report.result.winner == true_class) {
            ++summary.correct;
        }
        ++summary.total;
        summary.max_ms = std::max(summary.max_ms, report.total_ms);
        total_ms += report.total_ms;

        const std::string sample_id =
            entry.class_name + "/" + entry.path.filename().string();
        if (manifest_out) {
            write_result_csv_row(manifest, sample_id, true_class, report.result);
        }
        if (observer) {
            observer(sample_id, true_class, report);
        }
    }
    summary.accuracy = static_cast<double>(summary.correct) / summary.total;
    summary.mean_ms = total_ms / summary.total;
    return summary;
}

} // namespace ampcs

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
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include <ampcs/image.hpp>

namespace ampcs {

/// Layer sizes of a fully connected tanh network. One hidden layer is the
/// standard configuration (32-50-10 for the ten-class protocol); more are
/// accepted.
struct Topology {
    int input_size = 0;
    std::vector<int> hidden_sizes;
    int output_size = 0;

    std::vector<int> layer_sizes() const;
    void validate() const; // throws BadTopology
    bool operator==(const Topology&) const = default;
};

/// Dense layer, weights row-major [fan_out x fan_in].
struct Layer {
    int fan_in = 0;
    int fan_out = 0;
    std::vector<double> weights;
    std::vector<double> biases;
};

/// Fully connected network with tanh activation on every layer.
class MlpNetwork {
public:
    MlpNetwork() = default;
    explicit MlpNetwork(Topology topo); // zero weights and biases

    const Topology& topology() const { return topo_; }
    std::vector<Layer>& layers() { return layers_; }
    const std::vector<Layer>& layers() const { return layers_; }

    /// out = tanh(W_L ... tanh(W_1 x + b_1) ... + b_L); every component lies
    /// strictly inside (-1, 1).
    std::vector<double> forward(std::span<const double> input) const;
    std::vector<double> forward(const FeatureVector& input) const;

private:
    Topology topo_;
    std::vector<Layer> layers_;
};

/// Weights drawn uniformly from [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases
/// zero. Identical (topology, seed) pairs yield bit-identical networks.
MlpNetwork init_network(const Topology& topo, std::uint64_t seed);

struct TrainSample {
    std::vector<double> input;
    std::vector<double> target; // +1 at the true class, -1 elsewhere
};

using Dataset = std::vector<TrainSample>;

/// Mean over all samples and output components of (out - target)^2.
double mse(const MlpNetwork& net, std::span<const TrainSample> dataset);

struct TrainConfig {
    double learning_rate = 0.01;
    double target_mse = 0.1;
    int max_iterations = 32000; // epochs over the training set
    std::uint64_t seed = 1;
    bool shuffle = true;
};

struct TrainReport {
    double final_mse = 0.0;
    int iterations_run = 0;
    bool converged = false;
    std::vector<std::pair<int, double>> mse_trace; // (epoch, mse)
};

/// Per-sample stochastic gradient descent with backpropagation. Sample
/// order is reshuffled every epoch by a generator seeded from the config.
/// Stops when the epoch MSE reaches target_mse or max_iterations epochs
/// elapse; the network is updated in place.
///
/// Throws NonFinite when the loss or the weights stop being finite, or when
/// weight magnitudes explode past any value a tanh network can make use of
/// (the saturated regime a divergent learning rate drives the network into).
TrainReport train(MlpNetwork& net, const Dataset& dataset, const TrainConfig& config);

/// Checks every analytic partial derivative of the per-sample loss against
/// central finite differences (step 1e-5). Returns the largest discrepancy
/// relative to the largest gradient component.
double gradient_check(const MlpNetwork& net, const TrainSample& sample);

/// Sweeps inputs i and j over [-1, 1] on a grid x grid lattice, holding the
/// other inputs at the baseline, and records output k. result[r][c] is the
/// output at (input_i = x_r, input_j = y_c).
std::vector<std::vector<double>>
export_surface(const MlpNetwork& net, int input_i, int input_j, int output_k,
               int grid, const FeatureVector& baseline);

/// CSV with header x_index,y_index,x_value,y_value,z_value.
void write_surface_csv(std::ostream& out, const std::vector<std::vector<double>>& surface);

/// CSV with header epoch,mse.
void write_mse_trace_csv(std::ostream& out, const TrainReport& report);

} // namespace ampcs

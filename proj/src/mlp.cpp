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

#include <ampcs/mlp.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <ampcs/rng.hpp>

namespace ampcs {

namespace {

// Weights beyond this magnitude drive every tanh unit into the flat region
// where gradients vanish identically; further training is meaningless.
constexpr double kWeightBlowupLimit = 1e4;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// z = W x + b, then tanh.
void layer_forward(const Layer& layer, std::span<const double> in, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(layer.fan_out));
    for (int r = 0; r < layer.fan_out; ++r) {
        const double* wrow = &layer.weights[static_cast<std::size_t>(r) * layer.fan_in];
        double z = layer.biases[static_cast<std::size_t>(r)];
        for (int c = 0; c < layer.fan_in; ++c) {
            z += wrow[c] * in[static_cast<std::size_t>(c)];
        }
        out[static_cast<std::size_t>(r)] = std::tanh(z);
    }
}

struct Workspace {
    // activations[0] is the input copy; activations[l] the output of layer l.
    std::vector<std::vector<double>> activations;
    std::vector<std::vector<double>> deltas; // one per layer
};

void forward_trace(const MlpNetwork& net, std::span<const double> input, Workspace& ws) {
    const auto& layers = net.layers();
    ws.activations.resize(layers.size() + 1);
    ws.activations[0].assign(input.begin(), input.end());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        layer_forward(layers[l], ws.activations[l], ws.activations[l + 1]);
    }
}

// Per-sample loss: mean over output components of (out - target)^2.
double sample_loss(std::span<const double> out, std::span<const double> target) {
    double acc = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double e = out[k] - target[k];
        acc += e * e;
    }
    return acc / static_cast<double>(out.size());
}

// Fills ws.deltas with dLoss/dz per layer for the traced sample. Must be
// called on a workspace holding a fresh forward_trace.
void backward(const MlpNetwork& net, std::span<const double> target, Workspace& ws) {
    const auto& layers = net.layers();
    const std::size_t n_layers = layers.size();
    ws.deltas.resize(n_layers);

    const auto& out = ws.activations[n_layers];
    auto& delta_out = ws.deltas[n_layers - 1];
    delta_out.resize(out.size());
    const double scale = 2.0 / static_cast<double>(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        delta_out[k] = scale * (out[k] - target[k]) * (1.0 - out[k] * out[k]);
    }

    for (std::size_t l = n_layers - 1; l-- > 0;) {
        const Layer& above = layers[l + 1];
        const auto& act = ws.activations[l + 1];
        auto& delta = ws.deltas[l];
        delta.assign(act.size(), 0.0);
        for (int r = 0; r < above.fan_out; ++r) {
            const double d = ws.deltas[l + 1][static_cast<std::size_t>(r)];
            const double* wrow = &above.weights[static_cast<std::size_t>(r) * above.fan_in];
            for (int c = 0; c < above.fan_in; ++c) {
                delta[static_cast<std::size_t>(c)] += wrow[c] * d;
            }
        }
        for (std::size_t c = 0; c < delta.size(); ++c) {
            delta[c] *= 1.0 - act[c] * act[c];
        }
    }
}

void apply_update(MlpNetwork& net, const Workspace& ws, double lr) {
    auto& layers = net.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        Layer& layer = layers[l];
        const auto& in = ws.activations[l];
        const auto& delta = ws.deltas[l];
        for (int r = 0; r < layer.fan_out; ++r) {
            const double step = lr * delta[static_cast<std::size_t>(r)];
            double* wrow = &layer.weights[static_cast<std::size_t>(r) * layer.fan_in];
            for (int c = 0; c < layer.fan_in; ++c) {
                wrow[c] -= step * in[static_cast<std::size_t>(c)];
            }
            layer.biases[static_cast<std::size_t>(r)] -= step;
        }
    }
}

bool weights_sane(const MlpNetwork& net) {
    for (const Layer& layer : net.layers()) {
        for (double w : layer.weights) {
            if (!std::isfinite(w) || std::abs(w) > kWeightBlowupLimit) return false;
        }
        for (double b : layer.biases) {
            if (!std::isfinite(b) || std::abs(b) > kWeightBlowupLimit) return false;
        }
    }
    return true;
}

void check_sample_dims(const MlpNetwork& net, const TrainSample& s) {
    if (static_cast<int>(s.input.size()) != net.topology().input_size ||
        static_cast<int>(s.target.size()) != net.topology().output_size) {
        throw DimensionMismatch("sample does not match the network topology");
    }
}

} // namespace

std::vector<int> Topology::layer_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(hidden_sizes.size() + 2);
    sizes.push_back(input_size);
    sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
    sizes.push_back(output_size);
    return sizes;
}

void Topology::validate() const {
    if (input_size < 1 || output_size < 1) {
        throw BadTopology("input and output sizes must be positive");
    }
    for (int h : hidden_sizes) {
        if (h < 1) {
            throw BadTopology("hidden layer sizes must be positive");
        }
    }
}

MlpNetwork::MlpNetwork(Topology topo) : topo_(std::move(topo)) {
    topo_.validate();
    const auto sizes = topo_.layer_sizes();
    layers_.reserve(sizes.size() - 1);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        Layer layer;
        layer.fan_in = sizes[l];
        layer.fan_out = sizes[l + 1];
        layer.weights.assign(static_cast<std::size_t>(layer.fan_in) * layer.fan_out, 0.0);
        layer.biases.assign(static_cast<std::size_t>(layer.fan_out), 0.0);
        layers_.push_back(std::move(layer));
    }
}

std::vector<double> MlpNetwork::forward(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != topo_.input_size) {
        throw DimensionMismatch("input length does not match the network input layer");
    }
    std::vector<double> current(input.begin(), input.end());
    std::vector<double> next;
    for (const Layer& layer : layers_) {
        layer_forward(layer, current, next);
        current.swap(next);
    }
    return current;
}

std::vector<double> MlpNetwork::forward(const FeatureVector& input) const {
    return forward(std::span<const double>(input.components));
}

MlpNetwork init_network(const Topology& topo, std::uint64_t seed) {
    MlpNetwork net(topo);
    Prng rng(seed);
    for (Layer& layer : net.layers()) {
        const double limit = 1.0 / std::sqrt(static_cast<double>(layer.fan_in));
        for (double& w : layer.weights) {
            w = rng.uniform(-limit, limit);
        }
        // biases stay zero
    }
    return net;
}

double mse(const MlpNetwork& net, std::span<const TrainSample> dataset) {
    if (dataset.empty()) {
        throw EmptyDataset("cannot evaluate MSE on an empty dataset");
    }
    double acc = 0.0;
    for (const TrainSample& s : dataset) {
        check_sample_dims(net, s);
        const auto out = net.forward(s.input);
        acc += sample_loss(out, s.target);
    }
    return acc / static_cast<double>(dataset.size());
}

TrainReport train(MlpNetwork& net, const Dataset& dataset, const TrainConfig& config) {
    if (dataset.empty()) {
        throw EmptyDataset("cannot train on an empty dataset");
    }
    for (const TrainSample& s : dataset) {
        check_sample_dims(net, s);
    }
    if (config.learning_rate <= 0.0 || config.target_mse <= 0.0 || config.max_iterations < 1) {
        throw BadArgument("learning rate, target MSE and iteration budget must be positive");
    }

    TrainReport report;
    double current = mse(net, dataset);
    report.mse_trace.emplace_back(0, current);
    if (current <= config.target_mse) {
        report.final_mse = current;
        report.converged = true;
        return report;
    }

    Prng rng(config.seed);
    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    Workspace ws;
    for (int epoch = 1; epoch <= config.max_iterations; ++epoch) {
        if (config.shuffle) {
            rng.shuffle(order);
        }
        for (std::size_t idx : order) {
            const TrainSample& s = dataset[idx];
            forward_trace(net, s.input, ws);
            backward(net, s.target, ws);
            apply_update(net, ws, config.learning_rate);
        }
        current = mse(net, dataset);
        report.mse_trace.emplace_back(epoch, current);
        report.iterations_run = epoch;
        if (!std::isfinite(current) || !weights_sane(net)) {
            throw NonFinite("training diverged (non-finite loss or exploding weights); "
                            "reduce the learning rate");
        }
        if (current <= config.target_mse) {
            report.converged = true;
            break;
        }
    }
    report.final_mse = current;
    return report;
}

double gradient_check(const MlpNetwork& net, const TrainSample& sample) {
    check_sample_dims(net, sample);

    // Analytic gradient, flattened in layer order (weights then biases).
    Workspace ws;
    forward_trace(net, sample.input, ws);
    backward(net, sample.target, ws);

    std::vector<double> analytic;
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        const Layer& layer = net.layers()[l];
        const auto& in = ws.activations[l];
        const auto& delta = ws.deltas[l];
        for (int r = 0; r < layer.fan_out; ++r) {
            for (int c = 0; c < layer.fan_in; ++c) {
                analytic.push_back(delta[static_cast<std::size_t>(r)] *
                                   in[static_cast<std::size_t>(c)]);
            }
        }
        for (int r = 0; r < layer.fan_out; ++r) {
            analytic.push_back(delta[static_cast<std::size_t>(r)]);
        }
    }

    constexpr double h = 1e-5;
    MlpNetwork probe = net;
    const auto loss_at = [&] {
        const auto out = probe.forward(sample.input);
        return sample_loss(out, sample.target);
    };

    double worst_abs = 0.0;
    double scale = 0.0;
    std::size_t flat = 0;
    for (std::size_t l = 0; l < probe.layers().size(); ++l) {
        Layer& layer = probe.layers()[l];
        const auto probe_param = [&](double& param) {
            const double saved = param;
            param = saved + h;
            const double lp = loss_at();
            param = saved - h;
            const double lm = loss_at();
            param = saved;
            const double numeric = (lp - lm) / (2.0 * h);
            const double a = analytic[flat++];
            worst_abs = std::max(worst_abs, std::abs(a - numeric));
            scale = std::max({scale, std::abs(a), std::abs(numeric)});
        };
        for (double& w : layer.weights) probe_param(w);
        for (double& b : layer.biases) probe_param(b);
    }
    return worst_abs / std::max(scale, 1e-12);
}

std::vector<std::vector<double>>
export_surface(const MlpNetwork& net, int input_i, int input_j, int output_k,
               int grid, const FeatureVector& baseline) {
    const Topology& topo = net.topology();
    if (input_i < 0 || input_i >= topo.input_size || input_j < 0 ||
        input_j >= topo.input_size || output_k < 0 || output_k >= topo.output_size) {
        throw IndexOutOfRange("surface input/output index out of range");
    }
    if (grid < 2) {
        throw BadArgument("surface grid must be at least 2");
    }
    if (static_cast<int>(baseline.components.size()) != topo.input_size) {
        throw DimensionMismatch("baseline length does not match the input layer");
    }

    std::vector<double> x(baseline.components);
    std::vector<std::vector<double>> surface(static_cast<std::size_t>(grid),
                                             std::vector<double>(static_cast<std::size_t>(grid)));
    const double step = 2.0 / (grid - 1);
    for (int r = 0; r < grid; ++r) {
        x[static_cast<std::size_t>(input_i)] = -1.0 + step * r;
        for (int c = 0; c < grid; ++c) {
            x[static_cast<std::size_t>(input_j)] = -1.0 + step * c;
            surface[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                net.forward(x)[static_cast<std::size_t>(output_k)];
        }
    }
    return surface;
}

void write_surface_csv(std::ostream& out, const std::vector<std::vector<double>>& surface) {
    out << "x_index,y_index,x_value,y_value,z_value\n";
    const int grid = static_cast<int>(surface.size());
    const double step = grid > 1 ? 2.0 / (grid - 1) : 0.0;
    for (int r = 0; r < grid; ++r) {
        for (int c = 0; c < grid; ++c) {
            out << r << ',' << c << ',' << g17(-1.0 + step * r) << ','
                << g17(-1.0 + step * c) << ','
                << g17(surface[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)])
                << '\n';
        }
    }
}

void write_mse_trace_csv(std::ostream& out, const TrainReport& report) {
    out << "epoch,mse\n";
    for (const auto& [epoch, value] : report.mse_trace) {
        out << epoch << ',' << g17(value) << '\n';
    }
}

} // namespace ampcs

#pragma once

// Dense value network trained by backpropagation with Adam. Hidden layers
// are rectified-linear, the output layer is linear, and the loss is squared
// error on the chosen action's output only.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tplan/rng.hpp"

namespace tplan {

struct QNetwork {
  struct Layer {
    std::vector<double> weights;  // rows = outputs, row-major
    std::vector<double> biases;
    int in = 0;
    int out = 0;
  };

  std::vector<int> sizes;  // e.g. {30, 100, 100, 29}
  std::vector<Layer> layers;

  static QNetwork zeros(std::vector<int> layer_sizes) {
    if (layer_sizes.size() < 2) {
      throw std::invalid_argument("a network needs at least two layer sizes");
    }
    QNetwork net;
    net.sizes = std::move(layer_sizes);
    for (std::size_t l = 0; l + 1 < net.sizes.size(); ++l) {
      Layer layer;
      layer.in = net.sizes[l];
      layer.out = net.sizes[l + 1];
      layer.weights.assign(static_cast<std::size_t>(layer.in) * layer.out, 0.0);
      layer.biases.assign(layer.out, 0.0);
      net.layers.push_back(std::move(layer));
    }
    return net;
  }

  // Symmetric uniform fan-in scaling: weights ~ U(-1/sqrt(in), 1/sqrt(in)),
  // biases zero. Draw order is layer by layer, row-major.
  static QNetwork random_init(std::vector<int> layer_sizes, Rng& rng) {
    QNetwork net = zeros(std::move(layer_sizes));
    for (Layer& layer : net.layers) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
      for (double& w : layer.weights) w = rng.uniform(-bound, bound);
    }
    return net;
  }

  int input_width() const { return sizes.front(); }
  int output_width() const { return sizes.back(); }

  std::size_t parameter_count() const {
    std::size_t count = 0;
    for (const Layer& l : layers) count += l.weights.size() + l.biases.size();
    return count;
  }

  std::vector<double> forward(std::span<const double> input) const {
    if (static_cast<int>(input.size()) != input_width()) {
      throw std::invalid_argument("expected " + std::to_string(input_width()) +
                                  " input features, got " +
                                  std::to_string(input.size()));
    }
    std::vector<double> current(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const Layer& layer = layers[l];
      const bool hidden = l + 1 < layers.size();
      next.assign(layer.out, 0.0);
      for (int o = 0; o < layer.out; ++o) {
        double acc = layer.biases[o];
        const double* row = &layer.weights[static_cast<std::size_t>(o) * layer.in];
        for (int i = 0; i < layer.in; ++i) acc += row[i] * current[i];
        next[o] = hidden && acc < 0.0 ? 0.0 : acc;
      }
      current.swap(next);
    }
    return current;
  }
};

// Per-sample regression target for one output unit.
struct TargetPair {
  int action = 0;
  double value = 0.0;
};

// Mean squared error over the batch and its gradient with respect to every
// parameter. Outputs not named in `targets` receive zero gradient.
inline double loss_and_gradients(const QNetwork& net,
                                 const std::vector<std::vector<double>>& inputs,
                                 const std::vector<TargetPair>& targets,
                                 std::vector<QNetwork::Layer>& grads) {
  if (inputs.size() != targets.size() || inputs.empty()) {
    throw std::invalid_argument("need one target per input row");
  }
  const std::size_t batch = inputs.size();

  grads.clear();
  for (const QNetwork::Layer& layer : net.layers) {
    QNetwork::Layer g;
    g.in = layer.in;
    g.out = layer.out;
    g.weights.assign(layer.weights.size(), 0.0);
    g.biases.assign(layer.biases.size(), 0.0);
    grads.push_back(std::move(g));
  }

  double loss = 0.0;
  std::vector<std::vector<double>> activations(net.layers.size() + 1);
  std::vector<double> delta;
  std::vector<double> next_delta;

  for (std::size_t s = 0; s < batch; ++s) {
    if (static_cast<int>(inputs[s].size()) != net.input_width()) {
      throw std::invalid_argument("input row has the wrong width");
    }
    if (targets[s].action < 0 || targets[s].action >= net.output_width()) {
      throw std::invalid_argument("target action out of range");
    }

    activations[0] = inputs[s];
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      const QNetwork::Layer& layer = net.layers[l];
      const bool hidden = l + 1 < net.layers.size();
      activations[l + 1].assign(layer.out, 0.0);
      for (int o = 0; o < layer.out; ++o) {
        double acc = layer.biases[o];
        const double* row = &layer.weights[static_cast<std::size_t>(o) * layer.in];
        for (int i = 0; i < layer.in; ++i) acc += row[i] * activations[l][i];
        activations[l + 1][o] = hidden && acc < 0.0 ? 0.0 : acc;
      }
    }

    const double prediction = activations.back()[targets[s].action];
    const double residual = prediction - targets[s].value;
    if (!std::isfinite(residual)) {
      throw std::runtime_error("non-finite residual in batch row " +
                               std::to_string(s));
    }
    loss += residual * residual / static_cast<double>(batch);

    // Backward pass: squared-error derivative at the chosen output only.
    delta.assign(net.output_width(), 0.0);
    delta[targets[s].action] = 2.0 * residual / static_cast<double>(batch);

    for (std::size_t l = net.layers.size(); l-- > 0;) {
      const QNetwork::Layer& layer = net.layers[l];
      QNetwork::Layer& g = grads[l];
      for (int o = 0; o < layer.out; ++o) {
        const double d = delta[o];
        if (d == 0.0) continue;
        g.biases[o] += d;
        double* grow = &g.weights[static_cast<std::size_t>(o) * layer.in];
        const double* in_act = activations[l].data();
        for (int i = 0; i < layer.in; ++i) grow[i] += d * in_act[i];
      }
      if (l == 0) break;
      next_delta.assign(layer.in, 0.0);
      for (int o = 0; o < layer.out; ++o) {
        const double d = delta[o];
        if (d == 0.0) continue;
        const double* row = &layer.weights[static_cast<std::size_t>(o) * layer.in];
        for (int i = 0; i < layer.in; ++i) next_delta[i] += d * row[i];
      }
      // ReLU gate of the previous hidden layer.
      for (int i = 0; i < layer.in; ++i) {
        if (activations[l][i] <= 0.0) next_delta[i] = 0.0;
      }
      delta.swap(next_delta);
    }
  }
  return loss;
}

struct AdamState {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step = 0;
  std::vector<QNetwork::Layer> m;  // first moments, same shapes as the net
  std::vector<QNetwork::Layer> v;  // second moments

  AdamState() = default;
  explicit AdamState(const QNetwork& net, double lr = 0.01)
      : learning_rate(lr) {
    for (const QNetwork::Layer& layer : net.layers) {
      QNetwork::Layer zero;
      zero.in = layer.in;
      zero.out = layer.out;
      zero.weights.assign(layer.weights.size(), 0.0);
      zero.biases.assign(layer.biases.size(), 0.0);
      m.push_back(zero);
      v.push_back(std::move(zero));
    }
  }
};

// One Adam step on the minibatch gradient; returns the pre-update loss.
inline double train_batch(QNetwork& net, AdamState& adam,
                          const std::vector<std::vector<double>>& inputs,
                          const std::vector<TargetPair>& targets) {
  std::vector<QNetwork::Layer> grads;
  const double loss = loss_and_gradients(net, inputs, targets, grads);
  if (!std::isfinite(loss)) {
    throw std::runtime_error("non-finite loss over a batch of " +
                             std::to_string(inputs.size()));
  }

  ++adam.step;
  const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step));
  const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step));

  const auto update = [&](double& param, double& m, double& v, double g) {
    if (!std::isfinite(g)) {
      throw std::runtime_error("non-finite gradient during the Adam update");
    }
    m = adam.beta1 * m + (1.0 - adam.beta1) * g;
    v = adam.beta2 * v + (1.0 - adam.beta2) * g * g;
    const double m_hat = m / bc1;
    const double v_hat = v / bc2;
    param -= adam.learning_rate * m_hat / (std::sqrt(v_hat) + adam.epsilon);
  };

  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    QNetwork::Layer& layer = net.layers[l];
    for (std::size_t i = 0; i < layer.weights.size(); ++i) {
      update(layer.weights[i], adam.m[l].weights[i], adam.v[l].weights[i],
             grads[l].weights[i]);
    }
    for (std::size_t i = 0; i < layer.biases.size(); ++i) {
      update(layer.biases[i], adam.m[l].biases[i], adam.v[l].biases[i],
             grads[l].biases[i]);
    }
  }
  return loss;
}

}  // namespace tplan

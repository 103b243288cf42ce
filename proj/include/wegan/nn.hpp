#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wegan/batch.hpp"
#include "wegan/rng.hpp"

namespace wegan {

enum class Activation { relu, sigmoid, identity };

/// Fully connected network with a flat parameter vector.
///
/// Layout, per layer l in order: weight matrix W_l (fan_out x fan_in,
/// row-major) followed by bias vector b_l (fan_out).
struct Mlp {
    std::vector<std::size_t> layer_dims;
    Activation hidden_activation = Activation::relu;
    Activation output_activation = Activation::identity;
    std::vector<double> params;

    std::size_t input_dim() const { return layer_dims.front(); }
    std::size_t output_dim() const { return layer_dims.back(); }
    std::size_t layer_count() const { return layer_dims.size() - 1; }

    friend bool operator==(const Mlp&, const Mlp&) = default;
};

struct ParamGrad {
    std::vector<double> values;
};

struct AdamHyper {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    friend bool operator==(const AdamHyper&, const AdamHyper&) = default;
};

struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::uint64_t step = 0;
    AdamHyper hyper;

    friend bool operator==(const AdamState&, const AdamState&) = default;
};

/// Post-activation outputs of every layer (index 0 is the input) plus a
/// fingerprint of the parameters that produced them.
struct ForwardCache {
    std::vector<Batch> activations;
    std::uint64_t params_fingerprint = 0;
};

struct ForwardResult {
    Batch outputs;
    ForwardCache cache;
};

struct Gradients {
    ParamGrad params;
    Batch inputs;
};

/// Number of parameters of an MLP with the given layer dims.
std::size_t param_count(std::span<const std::size_t> layer_dims);

/// He-normal weights (std sqrt(2/fan_in)) on hidden layers, Xavier-normal
/// (std sqrt(2/(fan_in+fan_out))) on the output layer, zero biases.
/// Throws ConfigError for fewer than two dims or a zero dim.
Mlp mlp_init(std::vector<std::size_t> layer_dims, Activation hidden, Activation output, RngStream& rng);

/// Throws ShapeError when batch.cols != input dim, NumericError on a
/// non-finite output. Sigmoid outputs are returned unclamped.
ForwardResult forward(const Mlp& mlp, const Batch& batch);

/// Gradient of sum_i <output_grads.row(i), out_i> with respect to the
/// parameters and the inputs. Input gradients are always produced; the
/// parameter gradient is skipped when want_params is false.
/// Throws ContractError if the cache does not belong to `mlp`.
Gradients backward_full(const Mlp& mlp, const ForwardCache& cache, const Batch& output_grads,
                        bool want_params = true);

/// Parameter gradient of sum_i c_i * out_i for a scalar-output network.
ParamGrad backward(const Mlp& mlp, const ForwardCache& cache, std::span<const double> output_grads);

AdamState make_adam_state(const Mlp& mlp, const AdamHyper& hyper);

/// One bias-corrected Adam descent step. Throws NumericError on a
/// non-finite gradient entry and ContractError on a layout mismatch.
void adam_step(Mlp& mlp, const ParamGrad& grad, AdamState& state);

/// Clamps every parameter into [-c, c]. Throws ConfigError for c <= 0.
void clip_params(Mlp& mlp, double c);

double max_abs_param(const Mlp& mlp);

}  // namespace wegan

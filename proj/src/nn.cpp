#include "wegan/nn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "wegan/error.hpp"

namespace wegan {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;
using ConstVectorMap = Eigen::Map<const Eigen::RowVectorXd>;

MatrixMap as_matrix(Batch& b) { return MatrixMap(b.values.data(), static_cast<Eigen::Index>(b.rows), static_cast<Eigen::Index>(b.cols)); }
ConstMatrixMap as_matrix(const Batch& b) {
    return ConstMatrixMap(b.values.data(), static_cast<Eigen::Index>(b.rows), static_cast<Eigen::Index>(b.cols));
}

std::uint64_t fingerprint(std::span<const double> params) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ params.size();
    for (double p : params) {
        h ^= std::bit_cast<std::uint64_t>(p);
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return h;
}

double activate(Activation a, double x) {
    switch (a) {
        case Activation::relu: return x > 0.0 ? x : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case Activation::identity: return x;
    }
    return x;
}

// Derivative expressed through the post-activation value y.
double activation_slope(Activation a, double y) {
    switch (a) {
        case Activation::relu: return y > 0.0 ? 1.0 : 0.0;
        case Activation::sigmoid: return y * (1.0 - y);
        case Activation::identity: return 1.0;
    }
    return 1.0;
}

}  // namespace

std::size_t param_count(std::span<const std::size_t> layer_dims) {
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) total += layer_dims[l] * layer_dims[l + 1] + layer_dims[l + 1];
    return total;
}

Mlp mlp_init(std::vector<std::size_t> layer_dims, Activation hidden, Activation output, RngStream& rng) {
    if (layer_dims.size() < 2) throw ConfigError("mlp needs at least two layer dims (input and output)");
    for (std::size_t d : layer_dims)
        if (d == 0) throw ConfigError("mlp layer dims must be positive");

    Mlp mlp{std::move(layer_dims), hidden, output, {}};
    mlp.params.resize(param_count(mlp.layer_dims));

    std::size_t offset = 0;
    for (std::size_t l = 0; l < mlp.layer_count(); ++l) {
        const std::size_t fan_in = mlp.layer_dims[l];
        const std::size_t fan_out = mlp.layer_dims[l + 1];
        const bool last = l + 1 == mlp.layer_count();
        const double std_dev = last ? std::sqrt(2.0 / static_cast<double>(fan_in + fan_out))
                                    : std::sqrt(2.0 / static_cast<double>(fan_in));
        for (std::size_t i = 0; i < fan_in * fan_out; ++i) mlp.params[offset + i] = std_dev * rng.normal();
        offset += fan_in * fan_out + fan_out;  // biases stay zero
    }
    return mlp;
}

ForwardResult forward(const Mlp& mlp, const Batch& batch) {
    if (batch.cols != mlp.input_dim())
        throw ShapeError("forward: batch has " + std::to_string(batch.cols) + " columns, network expects " +
                         std::to_string(mlp.input_dim()));

    ForwardResult result;
    auto& acts = result.cache.activations;
    acts.reserve(mlp.layer_dims.size());
    acts.push_back(batch);

    const double* p = mlp.params.data();
    for (std::size_t l = 0; l < mlp.layer_count(); ++l) {
        const std::size_t fan_in = mlp.layer_dims[l];
        const std::size_t fan_out = mlp.layer_dims[l + 1];
        const double* weights = p;
        const double* bias = p + fan_in * fan_out;
        const Activation act = l + 1 == mlp.layer_count() ? mlp.output_activation : mlp.hidden_activation;

        const Batch& in = acts.back();
        Batch out(batch.rows, fan_out);
        const ConstMatrixMap w(weights, static_cast<Eigen::Index>(fan_out), static_cast<Eigen::Index>(fan_in));
        const ConstVectorMap b(bias, static_cast<Eigen::Index>(fan_out));
        auto y = as_matrix(out);
        y.noalias() = as_matrix(in) * w.transpose();
        y.rowwise() += b;
        for (double& v : out.values) v = activate(act, v);
        acts.push_back(std::move(out));
        p += fan_in * fan_out + fan_out;
    }

    for (double v : acts.back().values)
        if (!std::isfinite(v)) throw NumericError("forward: non-finite network output");

    result.outputs = acts.back();
    result.cache.params_fingerprint = fingerprint(mlp.params);
    return result;
}

Gradients backward_full(const Mlp& mlp, const ForwardCache& cache, const Batch& output_grads, bool want_params) {
    if (cache.activations.size() != mlp.layer_dims.size() || cache.params_fingerprint != fingerprint(mlp.params))
        throw ContractError("backward: cache was not produced by this network's current parameters");
    const std::size_t n = cache.activations.front().rows;
    if (output_grads.rows != n || output_grads.cols != mlp.output_dim())
        throw ContractError("backward: output gradient shape does not match the cached batch");

    Gradients grads;
    if (want_params) grads.params.values.assign(mlp.params.size(), 0.0);

    // Offsets of each layer's parameter block.
    std::vector<std::size_t> offsets(mlp.layer_count());
    for (std::size_t l = 0, off = 0; l < mlp.layer_count(); ++l) {
        offsets[l] = off;
        off += mlp.layer_dims[l] * mlp.layer_dims[l + 1] + mlp.layer_dims[l + 1];
    }

    Batch delta = output_grads;  // dLoss/d(post-activation) of the current layer
    for (std::size_t l = mlp.layer_count(); l-- > 0;) {
        const std::size_t fan_in = mlp.layer_dims[l];
        const std::size_t fan_out = mlp.layer_dims[l + 1];
        const Activation act = l + 1 == mlp.layer_count() ? mlp.output_activation : mlp.hidden_activation;
        const Batch& y = cache.activations[l + 1];
        const Batch& x = cache.activations[l];
        const double* weights = mlp.params.data() + offsets[l];

        for (std::size_t k = 0; k < delta.values.size(); ++k) delta.values[k] *= activation_slope(act, y.values[k]);

        const auto d = as_matrix(std::as_const(delta));
        if (want_params) {
            double* gw = grads.params.values.data() + offsets[l];
            MatrixMap gwm(gw, static_cast<Eigen::Index>(fan_out), static_cast<Eigen::Index>(fan_in));
            Eigen::Map<Eigen::RowVectorXd> gb(gw + fan_in * fan_out, static_cast<Eigen::Index>(fan_out));
            gwm.noalias() = d.transpose() * as_matrix(x);
            gb = d.colwise().sum();
        }

        Batch prev(n, fan_in);
        const ConstMatrixMap w(weights, static_cast<Eigen::Index>(fan_out), static_cast<Eigen::Index>(fan_in));
        as_matrix(prev).noalias() = d * w;
        delta = std::move(prev);
    }
    grads.inputs = std::move(delta);
    return grads;
}

ParamGrad backward(const Mlp& mlp, const ForwardCache& cache, std::span<const double> output_grads) {
    if (mlp.output_dim() != 1) throw ContractError("backward: per-sample coefficients need a scalar-output network");
    return backward_full(mlp, cache, column(output_grads)).params;
}

AdamState make_adam_state(const Mlp& mlp, const AdamHyper& hyper) {
    if (!(hyper.learning_rate >= 0.0) || !(hyper.beta1 >= 0.0 && hyper.beta1 < 1.0) ||
        !(hyper.beta2 >= 0.0 && hyper.beta2 < 1.0) || !(hyper.epsilon > 0.0))
        throw ConfigError("adam: need lr >= 0, beta1/beta2 in [0,1), epsilon > 0");
    return AdamState{std::vector<double>(mlp.params.size(), 0.0), std::vector<double>(mlp.params.size(), 0.0), 0,
                     hyper};
}

void adam_step(Mlp& mlp, const ParamGrad& grad, AdamState& state) {
    if (grad.values.size() != mlp.params.size() || state.first_moment.size() != mlp.params.size() ||
        state.second_moment.size() != mlp.params.size())
        throw ContractError("adam_step: gradient/state layout does not match the network");
    for (double g : grad.values)
        if (!std::isfinite(g)) throw NumericError("adam_step: non-finite gradient entry");

    const auto& h = state.hyper;
    state.step += 1;
    const double t = static_cast<double>(state.step);
    const double correction1 = 1.0 - std::pow(h.beta1, t);
    const double correction2 = 1.0 - std::pow(h.beta2, t);
    for (std::size_t i = 0; i < mlp.params.size(); ++i) {
        const double g = grad.values[i];
        double& m = state.first_moment[i];
        double& v = state.second_moment[i];
        m = h.beta1 * m + (1.0 - h.beta1) * g;
        v = h.beta2 * v + (1.0 - h.beta2) * g * g;
        const double m_hat = m / correction1;
        const double v_hat = v / correction2;
        mlp.params[i] -= h.learning_rate * m_hat / (std::sqrt(v_hat) + h.epsilon);
    }
}

void clip_params(Mlp& mlp, double c) {
    if (!(c > 0.0)) throw ConfigError("clip_params: clip value must be positive");
    for (double& p : mlp.params) p = std::clamp(p, -c, c);
}

double max_abs_param(const Mlp& mlp) {
    double m = 0.0;
    for (double p : mlp.params) m = std::max(m, std::abs(p));
    return m;
}

}  // namespace wegan

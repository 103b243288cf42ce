#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wegan/data.hpp"
#include "wegan/losses.hpp"
#include "wegan/metrics.hpp"
#include "wegan/nn.hpp"
#include "wegan/rng.hpp"
#include "wegan/weighting.hpp"

namespace wegan {

struct TrainConfig {
    std::size_t batch_size = 256;
    std::size_t disc_steps = 1;
    std::size_t iterations = 3000;  // generator iterations
    std::size_t epoch_len = 100;    // generator iterations per metric record
    LossFamily loss;
    WeightScheme scheme;
    AdamHyper gen_optimizer;
    AdamHyper disc_optimizer;
    std::vector<std::size_t> gen_dims{2, 32, 32, 2};
    std::vector<std::size_t> disc_dims{2, 32, 32, 1};
    NoiseSpec noise;
    RingMixtureSpec data;
    std::uint64_t seed = 1;
    std::size_t mmd_samples = 2048;
    MmdConfig mmd;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Throws ConfigError on any invalid field, including the iwgan scheme
/// combined with the wasserstein loss family.
void validate(const TrainConfig& config);

struct MetricRecord {
    std::size_t epoch = 0;
    std::size_t gen_iter = 0;
    double mmd = 0.0;
    double weight_var = 0.0;    // mean over the epoch's generator steps
    double mean_d_real = 0.0;   // mean over the epoch's discriminator steps
    double mean_d_fake = 0.0;
    double disc_loss = 0.0;
    double gen_loss = 0.0;

    friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

struct RunFailure {
    std::size_t gen_iter = 0;
    std::string kind;  // "divergent_weights", "numeric", ...
    std::string message;

    friend bool operator==(const RunFailure&, const RunFailure&) = default;
};

struct MetricTrace {
    std::vector<MetricRecord> records;
    std::optional<RunFailure> failure;

    bool failed() const { return failure.has_value(); }
    friend bool operator==(const MetricTrace&, const MetricTrace&) = default;
};

/// Outputs of the most recent discriminator or generator step.
struct StepStats {
    double mean_d_real = 0.0;
    double mean_d_fake = 0.0;
    double disc_loss = 0.0;
    double gen_loss = 0.0;
    double weight_var = 0.0;
    WeightVector weights;
};

/// Everything a run mutates. Randomness comes from three child streams of
/// the master seed ("real", "noise", "eval"); network init uses "init".
/// Weight computation draws nothing, so the draw sequence is independent of
/// the weight scheme.
struct TrainState {
    TrainConfig config;
    Mlp generator;
    Mlp discriminator;
    AdamState gen_adam;
    AdamState disc_adam;
    RngStream real_stream;
    RngStream noise_stream;
    RngStream eval_root;
    std::size_t gen_iter = 0;
    std::size_t real_batches_drawn = 0;
    std::size_t noise_batches_drawn = 0;
    StepStats last_disc;
    StepStats last_gen;
};

TrainState init_state(const TrainConfig& config);

/// One ascent step of the discriminator (or critic, followed by clipping) on
/// a fresh real batch and a fresh noise batch. The generator is untouched.
void discriminator_step(TrainState& state);

/// One weighted descent step of the generator on a fresh noise batch. The
/// discriminator is untouched.
void generator_step(TrainState& state);

/// MMD between a fresh real sample and a fresh generated sample, both drawn
/// from the evaluation stream for the current gen_iter so training draws are unaffected.
double evaluate_mmd(const TrainState& state);

using StepObserver = std::function<void(const TrainState&)>;

/// Runs config.iterations outer iterations (k discriminator steps + one
/// generator step each) and records metrics every epoch_len generator
/// steps and after the last one. Step failures end the run and are stored
/// in the trace; invalid configurations throw ConfigError.
MetricTrace train(const TrainConfig& config, const StepObserver& after_generator_step = {});

}  // namespace wegan

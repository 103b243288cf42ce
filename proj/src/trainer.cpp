#include "wegan/trainer.hpp"

#include <cmath>

#include "wegan/error.hpp"

namespace wegan {

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

Activation disc_output(const LossFamily& loss) {
    return loss.kind == LossKind::vanilla ? Activation::sigmoid : Activation::identity;
}

}  // namespace

void validate(const TrainConfig& c) {
    if (c.batch_size < 1) throw ConfigError("batch size m must be at least 1");
    if (c.disc_steps < 1) throw ConfigError("discriminator steps k must be at least 1");
    if (c.epoch_len < 1) throw ConfigError("epoch length must be at least 1");
    validate(c.loss);
    validate(c.scheme);
    if (c.scheme.kind == WeightKind::iwgan && c.loss.kind == LossKind::wasserstein)
        throw ConfigError("IWGAN is not applicable to the wasserstein loss family");
    validate(c.noise);
    validate(c.data);
    if (c.gen_dims.size() < 2 || c.disc_dims.size() < 2) throw ConfigError("network dims need input and output layers");
    for (auto d : c.gen_dims)
        if (d == 0) throw ConfigError("generator layer dims must be positive");
    for (auto d : c.disc_dims)
        if (d == 0) throw ConfigError("discriminator layer dims must be positive");
    if (c.gen_dims.front() != c.noise.dim) throw ConfigError("generator input dim must equal the noise dim");
    if (c.gen_dims.back() != RingMixtureSpec::dim) throw ConfigError("generator output dim must equal the data dim (2)");
    if (c.disc_dims.front() != RingMixtureSpec::dim) throw ConfigError("discriminator input dim must equal the data dim (2)");
    if (c.disc_dims.back() != 1) throw ConfigError("discriminator output dim must be 1");
    if (c.mmd_samples < 2) throw ConfigError("mmd sample count must be at least 2");
    if (c.mmd.bandwidth && !(*c.mmd.bandwidth > 0.0)) throw ConfigError("mmd bandwidth must be positive");
    make_adam_state(Mlp{}, c.gen_optimizer);
    make_adam_state(Mlp{}, c.disc_optimizer);
}

TrainState init_state(const TrainConfig& config) {
    validate(config);
    const RngStream root(config.seed);
    RngStream init = root.child("init");
    Mlp generator = mlp_init(config.gen_dims, Activation::relu, Activation::identity, init);
    Mlp discriminator = mlp_init(config.disc_dims, Activation::relu, disc_output(config.loss), init);
    AdamState gen_adam = make_adam_state(generator, config.gen_optimizer);
    AdamState disc_adam = make_adam_state(discriminator, config.disc_optimizer);
    return TrainState{config,
                      std::move(generator),
                      std::move(discriminator),
                      std::move(gen_adam),
                      std::move(disc_adam),
                      root.child("real"),
                      root.child("noise"),
                      root.child("eval"),
                      0,
                      0,
                      0,
                      {},
                      {}};
}

void discriminator_step(TrainState& s) {
    const auto& c = s.config;
    const Batch real = ring_mixture_sample(c.data, s.real_stream, c.batch_size);
    ++s.real_batches_drawn;
    const Batch noise = noise_sample(c.noise, s.noise_stream, c.batch_size);
    ++s.noise_batches_drawn;

    const Batch fake = forward(s.generator, noise).outputs;
    const ForwardResult on_real = forward(s.discriminator, real);
    const ForwardResult on_fake = forward(s.discriminator, fake);

    PairLossReport loss;
    if (c.loss.kind == LossKind::vanilla) {
        loss = disc_loss_vanilla(clamp_probabilities(on_real.outputs.values), clamp_probabilities(on_fake.outputs.values));
    } else {
        loss = critic_loss_wasserstein(on_real.outputs.values, on_fake.outputs.values);
    }

    // Ascent: descend on the negated objective.
    for (double& g : loss.real_seeds) g = -g;
    for (double& g : loss.fake_seeds) g = -g;
    ParamGrad grad = backward(s.discriminator, on_real.cache, loss.real_seeds);
    const ParamGrad fake_grad = backward(s.discriminator, on_fake.cache, loss.fake_seeds);
    for (std::size_t i = 0; i < grad.values.size(); ++i) grad.values[i] += fake_grad.values[i];

    adam_step(s.discriminator, grad, s.disc_adam);
    if (c.loss.kind == LossKind::wasserstein) clip_params(s.discriminator, c.loss.clip);

    s.last_disc.mean_d_real = mean_of(on_real.outputs.values);
    s.last_disc.mean_d_fake = mean_of(on_fake.outputs.values);
    s.last_disc.disc_loss = loss.value;
}

void generator_step(TrainState& s) {
    const auto& c = s.config;
    const Batch noise = noise_sample(c.noise, s.noise_stream, c.batch_size);
    ++s.noise_batches_drawn;

    const ForwardResult gen = forward(s.generator, noise);
    const ForwardResult disc = forward(s.discriminator, gen.outputs);
    const auto& raw = disc.outputs.values;

    WeightVector weights;
    LossReport loss;
    if (c.loss.kind == LossKind::vanilla) {
        const std::vector<double> d = clamp_probabilities(raw);
        // Importance ratios see the unclamped output so a saturated D shows up
        // as the divergent (infinite) weight it really is.
        weights = compute_weights(c.scheme, c.scheme.kind == WeightKind::iwgan ? std::span<const double>(raw) : d);
        loss = gen_loss_weighted_vanilla(d, weights, c.loss.generator_mode);
    } else {
        weights = compute_weights(c.scheme, squash_scores(raw));
        loss = gen_loss_weighted_wasserstein(raw, weights);
    }

    const Gradients through_disc = backward_full(s.discriminator, disc.cache, column(loss.seeds), false);
    const ParamGrad grad = backward_full(s.generator, gen.cache, through_disc.inputs).params;
    adam_step(s.generator, grad, s.gen_adam);
    ++s.gen_iter;

    s.last_gen.gen_loss = loss.value;
    s.last_gen.mean_d_fake = mean_of(raw);
    s.last_gen.weight_var = weight_variance(weights);
    s.last_gen.weights = std::move(weights);
}

double evaluate_mmd(const TrainState& s) {
    const auto& c = s.config;
    // keyed by gen_iter so the sample set depends only on the training point
    RngStream eval = s.eval_root.child("gen_iter", s.gen_iter);
    const Batch real = ring_mixture_sample(c.data, eval, c.mmd_samples);
    const Batch noise = noise_sample(c.noise, eval, c.mmd_samples);
    const Batch fake = forward(s.generator, noise).outputs;
    return mmd2(real, fake, c.mmd);
}

MetricTrace train(const TrainConfig& config, const StepObserver& after_generator_step) {
    TrainState state = init_state(config);
    MetricTrace trace;

    struct Accumulator {
        std::size_t disc_steps = 0, gen_steps = 0;
        double d_real = 0, d_fake = 0, disc_loss = 0, gen_loss = 0, weight_var = 0;
    } acc;

    auto record = [&](std::size_t epoch) {
        MetricRecord r;
        r.epoch = epoch;
        r.gen_iter = state.gen_iter;
        r.mmd = evaluate_mmd(state);
        const double nd = static_cast<double>(acc.disc_steps);
        const double ng = static_cast<double>(acc.gen_steps);
        r.mean_d_real = acc.d_real / nd;
        r.mean_d_fake = acc.d_fake / nd;
        r.disc_loss = acc.disc_loss / nd;
        r.gen_loss = acc.gen_loss / ng;
        r.weight_var = acc.weight_var / ng;
        for (double v : {r.mmd, r.mean_d_real, r.mean_d_fake, r.disc_loss, r.gen_loss, r.weight_var})
            if (!std::isfinite(v)) throw NumericError("non-finite metric at generator iteration " + std::to_string(r.gen_iter));
        trace.records.push_back(r);
        acc = {};
    };

    std::size_t epoch = 0;
    try {
        for (std::size_t it = 0; it < config.iterations; ++it) {
            for (std::size_t k = 0; k < config.disc_steps; ++k) {
                discriminator_step(state);
                ++acc.disc_steps;
                acc.d_real += state.last_disc.mean_d_real;
                acc.d_fake += state.last_disc.mean_d_fake;
                acc.disc_loss += state.last_disc.disc_loss;
            }
            generator_step(state);
            ++acc.gen_steps;
            acc.gen_loss += state.last_gen.gen_loss;
            acc.weight_var += state.last_gen.weight_var;
            if (after_generator_step) after_generator_step(state);

            if (state.gen_iter % config.epoch_len == 0 || state.gen_iter == config.iterations) record(++epoch);
        }
    } catch (const DivergentWeightError& e) {
        trace.failure = RunFailure{state.gen_iter, "divergent_weights", e.what()};
    } catch (const NumericError& e) {
        trace.failure = RunFailure{state.gen_iter, "numeric", e.what()};
    } catch (const ContractError& e) {
        trace.failure = RunFailure{state.gen_iter, "contract", e.what()};
    }
    return trace;
}

}  // namespace wegan

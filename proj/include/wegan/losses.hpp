#pragma once

#include <span>
#include <vector>

#include "wegan/weighting.hpp"

namespace wegan {

enum class GeneratorMode {
    saturating,      // minimize sum w_i log(1 - D(G(z_i)))
    non_saturating,  // minimize -sum w_i log D(G(z_i)); a common practical variant
};

enum class LossKind { vanilla, wasserstein };

struct LossFamily {
    LossKind kind = LossKind::vanilla;
    GeneratorMode generator_mode = GeneratorMode::saturating;
    double clip = 0.01;  // critic parameter clip, wasserstein only

    static LossFamily vanilla(GeneratorMode mode = GeneratorMode::saturating) {
        return {LossKind::vanilla, mode, 0.01};
    }
    static LossFamily wasserstein(double clip = 0.01) { return {LossKind::wasserstein, GeneratorMode::saturating, clip}; }

    friend bool operator==(const LossFamily&, const LossFamily&) = default;
};

void validate(const LossFamily& family);

inline constexpr double kProbabilityFloor = 1e-7;

/// Clamps a discriminator probability into [1e-7, 1 - 1e-7].
double clamp_probability(double p);
std::vector<double> clamp_probabilities(std::span<const double> p);

/// Generator-side loss value and its derivative with respect to each
/// network output.
struct LossReport {
    double value = 0.0;
    std::vector<double> seeds;
};

/// Two-sided (real + fake) loss for the discriminator or critic.
struct PairLossReport {
    double value = 0.0;
    std::vector<double> real_seeds;
    std::vector<double> fake_seeds;
};

/// (1/m) sum log d_real + (1/m) sum log(1 - d_fake), to be ascended.
/// Inputs must be strictly inside (0,1); clamp first.
PairLossReport disc_loss_vanilla(std::span<const double> d_real, std::span<const double> d_fake);

/// Weighted generator loss, to be descended.
PairLossReport critic_loss_wasserstein(std::span<const double> f_real, std::span<const double> f_fake);

LossReport gen_loss_weighted_vanilla(std::span<const double> d_fake, const WeightVector& w, GeneratorMode mode);

/// -sum w_i f_i, to be descended.
LossReport gen_loss_weighted_wasserstein(std::span<const double> f_fake, const WeightVector& w);

/// Logistic squash used to map unbounded critic scores into (0,1) before
/// the eta^(1-d) weight formula.
std::vector<double> squash_scores(std::span<const double> scores);

}  // namespace wegan

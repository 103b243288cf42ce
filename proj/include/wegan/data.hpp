#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "wegan/batch.hpp"
#include "wegan/rng.hpp"

namespace wegan {

/// Equal-weight mixture of 2-D Gaussians whose means sit on a circle.
/// Component j has mean radius * (cos(2 pi j / K), sin(2 pi j / K)) and
/// covariance covariance_scale * I.
struct RingMixtureSpec {
    std::size_t component_count = 8;
    double radius = 3.0;
    double covariance_scale = 1.0;

    static constexpr std::size_t dim = 2;

    friend bool operator==(const RingMixtureSpec&, const RingMixtureSpec&) = default;
};

enum class NoiseFamily { standard_normal, uniform };

struct NoiseSpec {
    std::size_t dim = 2;
    NoiseFamily family = NoiseFamily::standard_normal;

    friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

struct LabeledBatch {
    Batch samples;
    std::vector<std::size_t> components;
};

void validate(const RingMixtureSpec& spec);
void validate(const NoiseSpec& spec);

/// Mean of component j.
std::array<double, 2> component_mean(const RingMixtureSpec& spec, std::size_t j);

Batch ring_mixture_sample(const RingMixtureSpec& spec, RngStream& rng, std::size_t n);
LabeledBatch ring_mixture_sample_labeled(const RingMixtureSpec& spec, RngStream& rng, std::size_t n);

/// Rows are i.i.d. N(0, I) or U[-1,1]^dim depending on the family.
Batch noise_sample(const NoiseSpec& spec, RngStream& rng, std::size_t m);

}  // namespace wegan

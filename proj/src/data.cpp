#include "wegan/data.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "wegan/error.hpp"

namespace wegan {

void validate(const RingMixtureSpec& spec) {
    if (spec.component_count == 0) throw ConfigError("ring mixture needs at least one component");
    if (!(spec.covariance_scale > 0.0) || !std::isfinite(spec.covariance_scale))
        throw ConfigError("ring mixture covariance scale must be positive");
    if (!std::isfinite(spec.radius)) throw ConfigError("ring mixture radius must be finite");
}

void validate(const NoiseSpec& spec) {
    if (spec.dim == 0) throw ConfigError("noise dimension must be positive");
}

std::array<double, 2> component_mean(const RingMixtureSpec& spec, std::size_t j) {
    if (j == 0) return {spec.radius, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(spec.component_count);
    return {spec.radius * std::cos(angle), spec.radius * std::sin(angle)};
}

LabeledBatch ring_mixture_sample_labeled(const RingMixtureSpec& spec, RngStream& rng, std::size_t n) {
    validate(spec);
    if (n == 0) throw ConfigError("ring_mixture_sample: sample count must be at least 1");
    LabeledBatch out{Batch(n, RingMixtureSpec::dim), std::vector<std::size_t>(n)};
    const double scale = std::sqrt(spec.covariance_scale);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = rng.below(spec.component_count);
        const auto mean = component_mean(spec, j);
        out.components[i] = j;
        out.samples(i, 0) = mean[0] + scale * rng.normal();
        out.samples(i, 1) = mean[1] + scale * rng.normal();
    }
    return out;
}

Batch ring_mixture_sample(const RingMixtureSpec& spec, RngStream& rng, std::size_t n) {
    return ring_mixture_sample_labeled(spec, rng, n).samples;
}

Batch noise_sample(const NoiseSpec& spec, RngStream& rng, std::size_t m) {
    validate(spec);
    if (m == 0) throw ConfigError("noise_sample: batch size must be at least 1");
    Batch out(m, spec.dim);
    for (double& v : out.values)
        v = spec.family == NoiseFamily::standard_normal ? rng.normal() : rng.uniform(-1.0, 1.0);
    return out;
}

}  // namespace wegan

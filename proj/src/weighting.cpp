#include "wegan/weighting.hpp"

#include <algorithm>
#include <cmath>

#include "wegan/error.hpp"

namespace wegan {

namespace {

void require_nonempty(std::span<const double> d, const char* op) {
    if (d.empty()) throw ContractError(std::string(op) + ": empty discriminator output vector");
}

void require_unit_interval(std::span<const double> d, const char* op) {
    for (double v : d)
        if (!(v >= 0.0 && v <= 1.0)) throw ContractError(std::string(op) + ": discriminator value outside [0,1]");
}

WeightVector normalized(std::vector<double> raw) {
    double sum = 0.0;
    for (double v : raw) sum += v;
    for (double& v : raw) v /= sum;
    return WeightVector{std::move(raw)};
}

}  // namespace

std::string to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::uniform: return "uniform";
        case WeightKind::wegan: return "wegan";
        case WeightKind::iwgan: return "iwgan";
    }
    return "unknown";
}

void validate(const WeightScheme& scheme) {
    if (scheme.kind == WeightKind::wegan && !(scheme.eta > 0.0 && scheme.eta <= 1.0))
        throw ConfigError("eta must lie in (0,1], got " + std::to_string(scheme.eta));
    if (scheme.kind == WeightKind::iwgan && scheme.iwgan_clamp && !(*scheme.iwgan_clamp > 0.0))
        throw ConfigError("iwgan clamp must be positive");
}

WeightVector wegan_weights(std::span<const double> d_fake, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("wegan_weights: eta must lie in (0,1]");
    require_nonempty(d_fake, "wegan_weights");
    require_unit_interval(d_fake, "wegan_weights");

    // eta^(1-d) = exp((1-d) log eta); shifting every exponent by the max
    // leaves the normalized weights unchanged and avoids underflow for tiny eta.
    const double log_eta = std::log(eta);
    std::vector<double> exponents(d_fake.size());
    double top = -HUGE_VAL;
    for (std::size_t i = 0; i < d_fake.size(); ++i) {
        exponents[i] = (1.0 - d_fake[i]) * log_eta;
        top = std::max(top, exponents[i]);
    }
    for (double& e : exponents) e = std::exp(e - top);
    return normalized(std::move(exponents));
}

WeightVector iwgan_weights(std::span<const double> d_fake, std::optional<double> clamp) {
    require_nonempty(d_fake, "iwgan_weights");
    require_unit_interval(d_fake, "iwgan_weights");
    if (clamp && !(*clamp > 0.0)) throw ConfigError("iwgan_weights: clamp must be positive");

    std::vector<double> ratios(d_fake.size());
    for (std::size_t i = 0; i < d_fake.size(); ++i) {
        const double d = d_fake[i];
        double r = d < 1.0 ? d / (1.0 - d) : HUGE_VAL;
        if (clamp) r = std::min(r, *clamp);
        if (!std::isfinite(r))
            throw DivergentWeightError("iwgan_weights: importance weight is infinite (D(G(z)) = 1)");
        ratios[i] = r;
    }
    double sum = 0.0;
    for (double r : ratios) sum += r;
    if (!std::isfinite(sum)) throw DivergentWeightError("iwgan_weights: importance weight sum overflowed");
    if (sum == 0.0) throw DivergentWeightError("iwgan_weights: every importance weight is zero (D(G(z)) = 0)");
    return normalized(std::move(ratios));
}

WeightVector uniform_weights(std::size_t m) {
    if (m == 0) throw ContractError("uniform_weights: m must be at least 1");
    return WeightVector{std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

WeightVector compute_weights(const WeightScheme& scheme, std::span<const double> d_fake) {
    switch (scheme.kind) {
        case WeightKind::uniform: return uniform_weights(d_fake.size());
        case WeightKind::wegan: return wegan_weights(d_fake, scheme.eta);
        case WeightKind::iwgan: return iwgan_weights(d_fake, scheme.iwgan_clamp);
    }
    throw ConfigError("unknown weight scheme");
}

double weight_variance(const WeightVector& w) {
    if (w.values.empty()) return 0.0;
    // Deviations from the first entry: all-equal input gives exactly zero.
    const double pivot = w.values.front();
    const double n = static_cast<double>(w.values.size());
    double mean_dev = 0.0;
    for (double v : w.values) mean_dev += v - pivot;
    mean_dev /= n;
    double acc = 0.0;
    for (double v : w.values) {
        const double e = (v - pivot) - mean_dev;
        acc += e * e;
    }
    return acc / n;
}

double theorem1_margin(std::span<const double> d_fake, double eta) {
    require_nonempty(d_fake, "theorem1_margin");
    for (double d : d_fake)
        if (!(d > 0.0 && d < 1.0)) throw ContractError("theorem1_margin: values must lie strictly inside (0,1)");
    const WeightVector w = wegan_weights(d_fake, eta);
    const double m = static_cast<double>(d_fake.size());
    double uniform_term = 0.0;
    double weighted_term = 0.0;
    for (std::size_t i = 0; i < d_fake.size(); ++i) {
        const double log_fake = std::log1p(-d_fake[i]);
        uniform_term += log_fake / m;
        weighted_term += w.values[i] * log_fake;
    }
    return uniform_term - weighted_term;
}

bool on_simplex(const WeightVector& w, double tol) {
    double sum = 0.0;
    for (double v : w.values) {
        if (!(v >= 0.0)) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
}

}  // namespace wegan

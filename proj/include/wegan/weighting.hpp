#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wegan {

/// Nonnegative sample weights summing to one.
struct WeightVector {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

enum class WeightKind { uniform, wegan, iwgan };

struct WeightScheme {
    WeightKind kind = WeightKind::uniform;
    double eta = 1.0;                   // wegan only, in (0, 1]
    std::optional<double> iwgan_clamp;  // iwgan only; unset means unbounded

    static WeightScheme uniform() { return {}; }
    static WeightScheme wegan(double eta) { return {WeightKind::wegan, eta, std::nullopt}; }
    static WeightScheme iwgan(std::optional<double> clamp = std::nullopt) { return {WeightKind::iwgan, 1.0, clamp}; }

    friend bool operator==(const WeightScheme&, const WeightScheme&) = default;
};

std::string to_string(WeightKind kind);

/// Throws ConfigError for eta outside (0, 1] or a non-positive clamp.
void validate(const WeightScheme& scheme);

/// w_i proportional to eta^(1 - d_i), normalized. d_i in [0, 1].
WeightVector wegan_weights(std::span<const double> d_fake, double eta);

/// w_i proportional to d_i / (1 - d_i), optionally capped at `clamp` before
/// normalizing. Without a clamp, d_i == 1 (or a ratio sum that is zero or
/// overflows) raises DivergentWeightError.
WeightVector iwgan_weights(std::span<const double> d_fake, std::optional<double> clamp);

WeightVector uniform_weights(std::size_t m);

/// Dispatches on the scheme kind.
WeightVector compute_weights(const WeightScheme& scheme, std::span<const double> d_fake);

/// Population variance of the entries; exactly 0 when all entries are equal.
double weight_variance(const WeightVector& w);

/// Generator-term gap between the uniform and the eta-weighted loss:
///   (1/m) sum log(1 - d_i) - sum w_i log(1 - d_i),  w = wegan_weights(d, eta).
/// Nonnegative up to rounding. Requires every d_i strictly inside (0, 1).
double theorem1_margin(std::span<const double> d_fake, double eta);

/// True when entries are >= 0 and sum to 1 within `tol`.
bool on_simplex(const WeightVector& w, double tol = 1e-12);

}  // namespace wegan

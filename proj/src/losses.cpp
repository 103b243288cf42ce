#include "wegan/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wegan/error.hpp"

namespace wegan {

namespace {

void require_open_unit(std::span<const double> values, const char* op) {
    for (double v : values)
        if (!(v > 0.0 && v < 1.0))
            throw ContractError(std::string(op) + ": probability must lie strictly inside (0,1); clamp it first");
}

void require_finite(std::span<const double> values, const char* op) {
    for (double v : values)
        if (!std::isfinite(v)) throw NumericError(std::string(op) + ": non-finite critic score");
}

void require_matching(std::size_t a, std::size_t b, const char* op) {
    if (a != b) throw ContractError(std::string(op) + ": weight count does not match sample count");
    if (a == 0) throw ContractError(std::string(op) + ": empty batch");
}

}  // namespace

void validate(const LossFamily& family) {
    if (family.kind == LossKind::wasserstein && !(family.clip > 0.0))
        throw ConfigError("wasserstein clip value must be positive");
}

double clamp_probability(double p) { return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor); }

std::vector<double> clamp_probabilities(std::span<const double> p) {
    std::vector<double> out(p.size());
    std::transform(p.begin(), p.end(), out.begin(), clamp_probability);
    return out;
}

PairLossReport disc_loss_vanilla(std::span<const double> d_real, std::span<const double> d_fake) {
    require_matching(d_real.size(), d_fake.size(), "disc_loss_vanilla");
    require_open_unit(d_real, "disc_loss_vanilla");
    require_open_unit(d_fake, "disc_loss_vanilla");
    const double m = static_cast<double>(d_real.size());
    PairLossReport report;
    report.real_seeds.resize(d_real.size());
    report.fake_seeds.resize(d_fake.size());
    double real_sum = 0.0;
    double fake_sum = 0.0;
    for (std::size_t i = 0; i < d_real.size(); ++i) {
        real_sum += std::log(d_real[i]);
        fake_sum += std::log1p(-d_fake[i]);
        report.real_seeds[i] = 1.0 / (m * d_real[i]);
        report.fake_seeds[i] = -1.0 / (m * (1.0 - d_fake[i]));
    }
    report.value = real_sum / m + fake_sum / m;
    return report;
}

PairLossReport critic_loss_wasserstein(std::span<const double> f_real, std::span<const double> f_fake) {
    require_matching(f_real.size(), f_fake.size(), "critic_loss_wasserstein");
    require_finite(f_real, "critic_loss_wasserstein");
    require_finite(f_fake, "critic_loss_wasserstein");
    const double m = static_cast<double>(f_real.size());
    double real_sum = 0.0;
    double fake_sum = 0.0;
    for (std::size_t i = 0; i < f_real.size(); ++i) {
        real_sum += f_real[i];
        fake_sum += f_fake[i];
    }
    return PairLossReport{real_sum / m - fake_sum / m, std::vector<double>(f_real.size(), 1.0 / m),
                          std::vector<double>(f_fake.size(), -1.0 / m)};
}

LossReport gen_loss_weighted_vanilla(std::span<const double> d_fake, const WeightVector& w, GeneratorMode mode) {
    require_matching(w.size(), d_fake.size(), "gen_loss_weighted_vanilla");
    require_open_unit(d_fake, "gen_loss_weighted_vanilla");
    LossReport report;
    report.seeds.resize(d_fake.size());
    for (std::size_t i = 0; i < d_fake.size(); ++i) {
        const double wi = w.values[i];
        const double d = d_fake[i];
        if (mode == GeneratorMode::saturating) {
            report.value += wi * std::log1p(-d);
            report.seeds[i] = -wi / (1.0 - d);
        } else {
            report.value -= wi * std::log(d);
            report.seeds[i] = -wi / d;
        }
    }
    return report;
}

LossReport gen_loss_weighted_wasserstein(std::span<const double> f_fake, const WeightVector& w) {
    require_matching(w.size(), f_fake.size(), "gen_loss_weighted_wasserstein");
    require_finite(f_fake, "gen_loss_weighted_wasserstein");
    LossReport report;
    report.seeds.resize(f_fake.size());
    for (std::size_t i = 0; i < f_fake.size(); ++i) {
        report.value -= w.values[i] * f_fake[i];
        report.seeds[i] = -w.values[i];
    }
    return report;
}

std::vector<double> squash_scores(std::span<const double> scores) {
    std::vector<double> out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) out[i] = 1.0 / (1.0 + std::exp(-scores[i]));
    return out;
}

}  // namespace wegan

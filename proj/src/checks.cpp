#include "wegan/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "wegan/error.hpp"
#include "wegan/metrics.hpp"
#include "wegan/nn.hpp"
#include "wegan/oracles.hpp"
#include "wegan/trainer.hpp"
#include "wegan/weighting.hpp"

namespace wegan {

namespace {

using WeightFn = std::function<WeightVector(std::span<const double>, double)>;

WeightFn weight_function(const CheckOptions& options) {
    if (!options.corrupt_weight_normalization) return wegan_weights;
    return [](std::span<const double> d, double eta) {
        WeightVector w = wegan_weights(d, eta);
        for (double& v : w.values) v *= 1.25;
        return w;
    };
}

std::vector<double> random_open_unit(RngStream& rng, std::size_t m) {
    std::vector<double> d(m);
    for (double& v : d) {
        do v = rng.uniform();
        while (v <= 0.0);
    }
    return d;
}

double random_eta(RngStream& rng) { return 1.0 - rng.uniform(); }  // (0, 1]

template <class... Args>
std::string describe(Args&&... args) {
    std::ostringstream os;
    os.precision(6);
    (os << ... << args);
    return os.str();
}

CheckResult theorem1_sweep(const WeightFn& weights, std::uint64_t seed) {
    RngStream rng(seed);
    double worst = HUGE_VAL;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t m = 2 + rng.below(63);
        const auto d = random_open_unit(rng, m);
        const double eta = random_eta(rng);
        const WeightVector w = weights(d, eta);
        double uniform_term = 0.0, weighted_term = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            uniform_term += std::log1p(-d[i]) / static_cast<double>(m);
            weighted_term += w.values[i] * std::log1p(-d[i]);
        }
        worst = std::min(worst, uniform_term - weighted_term);
    }
    return {"theorem1_sweep", seed, worst >= -1e-12, describe("10000 instances, min margin ", worst)};
}

CheckResult weight_simplex(const WeightFn& weights, std::uint64_t seed) {
    RngStream rng(seed);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 1 + rng.below(64);
        std::vector<double> d(m);
        for (double& v : d) v = rng.uniform();
        const double eta = random_eta(rng);
        const WeightVector w = weights(d, eta);
        if (!on_simplex(w, 1e-12)) return {"weight_simplex", seed, false, describe("trial ", trial, " off simplex")};
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (d[i] >= d[j] && w.values[i] < w.values[j])
                    return {"weight_simplex", seed, false, describe("trial ", trial, " not monotone in d")};
    }
    return {"weight_simplex", seed, true, "2000 instances on simplex and monotone"};
}

CheckResult equilibrium_weights(const WeightFn& weights, std::uint64_t seed) {
    RngStream rng(seed);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t m = 1 + rng.below(512);
        const double eta = random_eta(rng);
        const std::vector<double> d(m, 0.5);
        const WeightVector w = weights(d, eta);
        const double target = 1.0 / static_cast<double>(m);
        for (double v : w.values)
            if (std::abs(v - target) > 1e-15)
                return {"equilibrium_weights", seed, false, describe("m=", m, " weight ", v, " != 1/m")};
        if (weight_variance(w) != 0.0)
            return {"equilibrium_weights", seed, false, describe("m=", m, " nonzero variance")};
    }
    return {"equilibrium_weights", seed, true, "1000 instances uniform with zero variance"};
}

CheckResult gradient_check(std::uint64_t seed) {
    RngStream rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> dims{1 + rng.below(4)};
        const std::size_t layers = 1 + rng.below(3);
        for (std::size_t l = 0; l + 1 < layers; ++l) dims.push_back(1 + rng.below(8));
        dims.push_back(1 + rng.below(2));
        const Activation out = rng.below(2) ? Activation::sigmoid : Activation::identity;
        Mlp mlp = mlp_init(dims, Activation::relu, out, rng);
        for (double& p : mlp.params) p += 0.1 * rng.normal();  // nonzero biases too
        const std::size_t n = 1 + rng.below(5);
        Batch x(n, dims.front());
        for (double& v : x.values) v = rng.normal();
        Batch c(n, dims.back());
        for (double& v : c.values) v = rng.normal();

        const ForwardResult f = forward(mlp, x);
        const Gradients g = backward_full(mlp, f.cache, c);
        const auto fd = oracle::finite_difference_gradient(mlp, x, c, 1e-5);
        const Batch fd_in = oracle::finite_difference_input_gradient(mlp, x, c, 1e-5);
        worst = std::max(worst, oracle::max_relative_error(g.params.values, fd));
        worst = std::max(worst, oracle::max_relative_error(g.inputs.values, fd_in.values));
    }
    return {"gradient_finite_difference", seed, worst < 1e-4, describe("100 nets, max relative error ", worst)};
}

CheckResult mmd_oracle(std::uint64_t seed) {
    RngStream rng(seed);
    double worst = 0.0;
    for (std::size_t n = 2; n <= 64; n += 3) {
        const std::size_t dim = 1 + rng.below(3);
        Batch x(n, dim), y(2 + rng.below(63), dim);
        for (double& v : x.values) v = rng.normal();
        for (double& v : y.values) v = 0.5 + rng.normal();
        const double sigma = 0.2 + 2.0 * rng.uniform();
        for (auto est : {MmdEstimator::biased, MmdEstimator::unbiased}) {
            const double fast = mmd2(x, y, MmdConfig{sigma, est});
            worst = std::max(worst, std::abs(fast - oracle::naive_mmd2(x, y, sigma, est)));
        }
        worst = std::max(worst, std::abs(mmd2(x, x, MmdConfig{sigma, MmdEstimator::biased})));
    }
    return {"mmd_oracle", seed, worst <= 1e-12, describe("max abs deviation ", worst)};
}

TrainConfig small_config(std::uint64_t seed) {
    TrainConfig c;
    c.batch_size = 32;
    c.iterations = 200;
    c.epoch_len = 50;
    c.mmd_samples = 128;
    c.seed = seed;
    c.gen_optimizer.learning_rate = 1e-3;
    c.disc_optimizer.learning_rate = 1e-3;
    return c;
}

CheckResult eta_one_equivalence(std::uint64_t seed) {
    TrainConfig base = small_config(seed);
    TrainConfig weighted = base;
    weighted.scheme = WeightScheme::wegan(1.0);
    const MetricTrace a = train(base);
    const MetricTrace b = train(weighted);
    const bool same = a == b && !a.failed() && !a.records.empty();
    return {"eta_one_equivalence", seed, same, describe(a.records.size(), " records, bit-identical: ", same)};
}

CheckResult equilibrium_variance(const WeightFn& weights, std::uint64_t seed) {
    TrainConfig c = small_config(seed);
    c.scheme = WeightScheme::wegan(0.01);
    c.disc_optimizer.learning_rate = 0.0;
    TrainState state = init_state(c);
    std::fill(state.discriminator.params.begin(), state.discriminator.params.end(), 0.0);  // D == 0.5
    RngStream probe(seed);
    double worst = 0.0;
    for (int step = 0; step < 50; ++step) {
        discriminator_step(state);
        generator_step(state);
        const Batch fake = forward(state.generator, noise_sample(c.noise, probe, 8)).outputs;
        const auto d = forward(state.discriminator, fake).outputs.values;
        worst = std::max(worst, state.last_gen.weight_var);
        worst = std::max(worst, weight_variance(weights(d, c.scheme.eta)));
    }
    return {"equilibrium_weight_variance", seed, worst == 0.0, describe("max weight variance ", worst)};
}

}  // namespace

bool CheckReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

CheckReport run_checks(const CheckOptions& options) {
    const WeightFn weights = weight_function(options);
    CheckReport report;
    auto guarded = [&](const std::string& name, std::uint64_t seed, auto&& fn) {
        try {
            report.results.push_back(fn());
        } catch (const std::exception& e) {
            report.results.push_back({name, seed, false, std::string("exception: ") + e.what()});
        }
    };
    guarded("theorem1_sweep", 1001, [&] { return theorem1_sweep(weights, 1001); });
    guarded("weight_simplex", 1002, [&] { return weight_simplex(weights, 1002); });
    guarded("equilibrium_weights", 1003, [&] { return equilibrium_weights(weights, 1003); });
    guarded("gradient_finite_difference", 1004, [&] { return gradient_check(1004); });
    guarded("mmd_oracle", 1005, [&] { return mmd_oracle(1005); });
    guarded("eta_one_equivalence", 1006, [&] { return eta_one_equivalence(1006); });
    guarded("equilibrium_weight_variance", 1007, [&] { return equilibrium_variance(weights, 1007); });
    return report;
}

void print_report(std::ostream& out, const CheckReport& report) {
    for (const auto& r : report.results)
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " (seed " << r.seed << "): " << r.detail << '\n';
    out << (report.all_passed() ? "all checks passed" : "some checks FAILED") << '\n';
}

}  // namespace wegan

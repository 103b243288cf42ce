#include <doctest.h>

#include <cmath>

#include "wegan/error.hpp"
#include "wegan/nn.hpp"
#include "wegan/oracles.hpp"

using namespace wegan;

namespace {

Mlp random_net(RngStream& rng, std::vector<std::size_t> dims, Activation out) {
    Mlp mlp = mlp_init(std::move(dims), Activation::relu, out, rng);
    for (double& p : mlp.params) p += 0.1 * rng.normal();
    return mlp;
}

Batch random_batch(RngStream& rng, std::size_t rows, std::size_t cols) {
    Batch b(rows, cols);
    for (double& v : b.values) v = rng.normal();
    return b;
}

}  // namespace

TEST_CASE("mlp_init parameter count follows the layout") {
    RngStream rng(1);
    const Mlp d = mlp_init({2, 32, 32, 1}, Activation::relu, Activation::sigmoid, rng);
    CHECK(d.params.size() == 1185);
    const std::vector<std::size_t> dims{2, 32, 32, 1};
    CHECK(param_count(dims) == 1185);
}

TEST_CASE("mlp_init rejects degenerate layer lists") {
    RngStream rng(1);
    CHECK_THROWS_AS(mlp_init({2}, Activation::relu, Activation::sigmoid, rng), ConfigError);
    CHECK_THROWS_AS(mlp_init({2, 0, 1}, Activation::relu, Activation::sigmoid, rng), ConfigError);
}

TEST_CASE("mlp_init is deterministic and uses zero biases") {
    RngStream a(9), b(9);
    const Mlp x = mlp_init({2, 4, 1}, Activation::relu, Activation::sigmoid, a);
    const Mlp y = mlp_init({2, 4, 1}, Activation::relu, Activation::sigmoid, b);
    CHECK(x == y);
    for (std::size_t o = 0; o < 4; ++o) CHECK(x.params[8 + o] == 0.0);
    CHECK(x.params.back() == 0.0);
}

TEST_CASE("forward on hand-set weights") {
    SUBCASE("zero params give sigmoid(0) = 0.5") {
        RngStream rng(2);
        Mlp mlp = mlp_init({2, 8, 1}, Activation::relu, Activation::sigmoid, rng);
        std::fill(mlp.params.begin(), mlp.params.end(), 0.0);
        const Batch x = random_batch(rng, 5, 2);
        const auto out = forward(mlp, x).outputs;
        CHECK(out.rows == 5);
        for (double v : out.values) CHECK(v == 0.5);
    }
    SUBCASE("single identity layer") {
        Mlp mlp{{2, 1}, Activation::relu, Activation::identity, {1.0, 2.0, 0.5}};
        Batch x(1, 2, 1.0);
        CHECK(forward(mlp, x).outputs(0, 0) == 3.5);
    }
}

TEST_CASE("forward rejects a dimension mismatch") {
    Mlp mlp{{2, 1}, Activation::relu, Activation::identity, {1.0, 2.0, 0.5}};
    CHECK_THROWS_AS(forward(mlp, Batch(3, 3)), ShapeError);
}

TEST_CASE("forward reports non-finite outputs") {
    Mlp mlp{{1, 1}, Activation::relu, Activation::identity, {1e308, 0.0}};
    CHECK_THROWS_AS(forward(mlp, Batch(1, 1, 1e308)), NumericError);
}

TEST_CASE("backward with zero coefficients is zero") {
    RngStream rng(3);
    const Mlp mlp = random_net(rng, {2, 6, 1}, Activation::sigmoid);
    const Batch x = random_batch(rng, 4, 2);
    const auto f = forward(mlp, x);
    const std::vector<double> zeros(4, 0.0);
    for (double g : backward(mlp, f.cache, zeros).values) CHECK(g == 0.0);
}

TEST_CASE("backward is linear in the coefficients") {
    RngStream rng(4);
    const Mlp mlp = random_net(rng, {3, 5, 5, 1}, Activation::sigmoid);
    const Batch x = random_batch(rng, 6, 3);
    const auto f = forward(mlp, x);
    std::vector<double> c(6), c2(6);
    for (std::size_t i = 0; i < 6; ++i) {
        c[i] = rng.normal();
        c2[i] = 2.0 * c[i];
    }
    const auto g1 = backward(mlp, f.cache, c).values;
    const auto g2 = backward(mlp, f.cache, c2).values;
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(g2[i] == 2.0 * g1[i]);
}

TEST_CASE("backward matches central finite differences") {
    RngStream rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Activation out = trial % 2 ? Activation::sigmoid : Activation::identity;
        const Mlp mlp = random_net(rng, {3, 8, 8, 2}, out);
        const Batch x = random_batch(rng, 4, 3);
        const Batch c = random_batch(rng, 4, 2);
        const auto g = backward_full(mlp, forward(mlp, x).cache, c);
        const auto fd = oracle::finite_difference_gradient(mlp, x, c, 1e-5);
        const auto fd_in = oracle::finite_difference_input_gradient(mlp, x, c, 1e-5);
        CHECK(oracle::max_relative_error(g.params.values, fd) < 1e-4);
        CHECK(oracle::max_relative_error(g.inputs.values, fd_in.values) < 1e-4);
    }
}

TEST_CASE("backward rejects a stale cache") {
    RngStream rng(6);
    Mlp mlp = random_net(rng, {2, 4, 1}, Activation::sigmoid);
    const auto f = forward(mlp, random_batch(rng, 3, 2));
    mlp.params[0] += 1.0;
    const std::vector<double> c(3, 1.0);
    CHECK_THROWS_AS(backward(mlp, f.cache, c), ContractError);
    mlp.params[0] -= 1.0;
    const std::vector<double> wrong(2, 1.0);
    CHECK_THROWS_AS(backward(mlp, f.cache, wrong), ContractError);
}

TEST_CASE("forward and backward are pure") {
    RngStream rng(7);
    const Mlp mlp = random_net(rng, {2, 8, 1}, Activation::sigmoid);
    const Batch x = random_batch(rng, 10, 2);
    const std::vector<double> c(10, 0.3);
    const auto f1 = forward(mlp, x);
    const auto f2 = forward(mlp, x);
    CHECK(f1.outputs == f2.outputs);
    CHECK(backward(mlp, f1.cache, c).values == backward(mlp, f2.cache, c).values);
}

TEST_CASE("adam_step") {
    SUBCASE("zero gradient from a fresh state leaves params unchanged") {
        RngStream rng(8);
        Mlp mlp = random_net(rng, {2, 4, 1}, Activation::sigmoid);
        const Mlp before = mlp;
        AdamState state = make_adam_state(mlp, {});
        adam_step(mlp, ParamGrad{std::vector<double>(mlp.params.size(), 0.0)}, state);
        CHECK(mlp.params == before.params);
        CHECK(state.step == 1);
    }
    SUBCASE("first step on a scalar parameter") {
        // t = 1: m_hat = g, v_hat = g^2, so the step is lr * g / (|g| + eps).
        Mlp mlp{{1, 1}, Activation::relu, Activation::identity, {0.0, 0.0}};
        AdamState state = make_adam_state(mlp, AdamHyper{1e-3, 0.9, 0.999, 1e-8});
        adam_step(mlp, ParamGrad{{0.5, 0.0}}, state);
        CHECK(mlp.params[0] == doctest::Approx(-0.0009999999800000003).epsilon(1e-14));
        CHECK(mlp.params[1] == 0.0);
    }
    SUBCASE("identical calls give identical results") {
        RngStream rng(9);
        Mlp a = random_net(rng, {2, 4, 1}, Activation::sigmoid);
        Mlp b = a;
        AdamState sa = make_adam_state(a, {});
        AdamState sb = sa;
        ParamGrad g{std::vector<double>(a.params.size())};
        for (double& v : g.values) v = rng.normal();
        for (int i = 0; i < 5; ++i) {
            adam_step(a, g, sa);
            adam_step(b, g, sb);
        }
        CHECK(a == b);
        CHECK(sa == sb);
        CHECK(sa.step == 5);
    }
    SUBCASE("non-finite gradient is rejected") {
        Mlp mlp{{1, 1}, Activation::relu, Activation::identity, {0.0, 0.0}};
        AdamState state = make_adam_state(mlp, {});
        CHECK_THROWS_AS(adam_step(mlp, ParamGrad{{NAN, 0.0}}, state), NumericError);
    }
}

TEST_CASE("clip_params") {
    Mlp mlp{{1, 1}, Activation::relu, Activation::identity, {0.5, -0.005}};
    clip_params(mlp, 0.01);
    CHECK(mlp.params[0] == 0.01);
    CHECK(mlp.params[1] == -0.005);
    CHECK(max_abs_param(mlp) <= 0.01);
    CHECK_THROWS_AS(clip_params(mlp, 0.0), ConfigError);
    CHECK_THROWS_AS(clip_params(mlp, -1.0), ConfigError);

    RngStream rng(10);
    Mlp big = random_net(rng, {2, 16, 1}, Activation::identity);
    clip_params(big, 0.05);
    CHECK(max_abs_param(big) <= 0.05);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wegan/error.hpp"
#include "wegan/metrics.hpp"
#include "wegan/oracles.hpp"
#include "wegan/rng.hpp"

using namespace wegan;

namespace {

Batch random_batch(RngStream& rng, std::size_t rows, std::size_t cols, double shift = 0.0) {
    Batch b(rows, cols);
    for (double& v : b.values) v = shift + rng.normal();
    return b;
}

}  // namespace

TEST_CASE("biased mmd of a set with itself is zero") {
    RngStream rng(51);
    const Batch x = random_batch(rng, 40, 2);
    CHECK(std::abs(mmd2(x, x, MmdConfig{1.0, MmdEstimator::biased})) < 1e-12);
    CHECK(std::abs(mmd2(x, x, MmdConfig{std::nullopt, MmdEstimator::biased})) < 1e-12);
}

TEST_CASE("singleton mmd has a closed form") {
    Batch x(1, 2), y(1, 2);
    y(0, 0) = 1.0;
    y(0, 1) = 2.0;
    const double got = mmd2(x, y, MmdConfig{1.5, MmdEstimator::biased});
    CHECK(got == doctest::Approx(1.3416140243841888).epsilon(1e-14));
    CHECK(got == doctest::Approx(2.0 * (1.0 - std::exp(-5.0 / (2.0 * 1.5 * 1.5)))).epsilon(1e-14));
}

TEST_CASE("mmd matches the naive double loop") {
    RngStream rng(52);
    for (std::size_t n = 2; n <= 64; ++n) {
        const std::size_t dim = 1 + rng.below(4);
        const Batch x = random_batch(rng, n, dim);
        const Batch y = random_batch(rng, 2 + rng.below(63), dim, 0.3);
        const double sigma = 0.1 + 3.0 * rng.uniform();
        for (auto est : {MmdEstimator::biased, MmdEstimator::unbiased})
            REQUIRE(std::abs(mmd2(x, y, MmdConfig{sigma, est}) - oracle::naive_mmd2(x, y, sigma, est)) <= 1e-12);
        const double median = median_heuristic(x, y);
        REQUIRE(std::abs(mmd2(x, y, MmdConfig{}) - oracle::naive_mmd2(x, y, median, MmdEstimator::unbiased)) <= 1e-12);
    }
}

TEST_CASE("biased mmd is symmetric, nonnegative and permutation invariant") {
    RngStream rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const Batch x = random_batch(rng, 5 + rng.below(30), 2);
        const Batch y = random_batch(rng, 5 + rng.below(30), 2, 0.5);
        const MmdConfig cfg{0.8, MmdEstimator::biased};
        const double xy = mmd2(x, y, cfg);
        CHECK(xy >= 0.0);
        CHECK(xy == doctest::Approx(mmd2(y, x, cfg)).epsilon(1e-12));

        Batch xr = x;
        for (std::size_t i = 0; i < x.rows; ++i) {
            const std::size_t j = x.rows - 1 - i;
            xr(i, 0) = x(j, 0);
            xr(i, 1) = x(j, 1);
        }
        CHECK(std::abs(mmd2(xr, y, cfg) - xy) < 1e-12);
    }
}

TEST_CASE("mmd rejects bad inputs") {
    Batch x(3, 2), y(3, 3), one(1, 2), empty(0, 2);
    CHECK_THROWS_AS(mmd2(x, y, MmdConfig{1.0, MmdEstimator::biased}), ShapeError);
    CHECK_THROWS_AS(mmd2(x, empty, MmdConfig{1.0, MmdEstimator::biased}), ContractError);
    CHECK_THROWS_AS(mmd2(x, one, MmdConfig{1.0, MmdEstimator::unbiased}), ContractError);
    CHECK_THROWS_AS(mmd2(x, x, MmdConfig{0.0, MmdEstimator::biased}), ConfigError);
    CHECK_NOTHROW(mmd2(x, one, MmdConfig{1.0, MmdEstimator::biased}));
}

TEST_CASE("median heuristic") {
    SUBCASE("two points") {
        Batch x(1, 2), y(1, 2);
        y(0, 0) = 3.0;
        y(0, 1) = 4.0;
        CHECK(median_heuristic(x, y) == 5.0);
    }
    SUBCASE("identical points hit the floor") {
        Batch x(3, 2, 1.0), y(2, 2, 1.0);
        CHECK(median_heuristic(x, y) == kBandwidthFloor);
    }
    SUBCASE("{0, 1, 3} on the line") {
        Batch x(2, 1), y(1, 1);
        x(1, 0) = 1.0;
        y(0, 0) = 3.0;
        CHECK(median_heuristic(x, y) == 2.0);
    }
    SUBCASE("too few points") {
        Batch x(1, 1), empty(0, 1);
        CHECK_THROWS_AS(median_heuristic(x, empty), ContractError);
    }
}

TEST_CASE("faithfulness") {
    const std::vector<double> hi(4, 0.7), lo(4, 0.3), half(4, 0.5), below(4, 0.4);
    CHECK(faithfulness(hi, lo).faithful);
    CHECK_FALSE(faithfulness(half, half).faithful);
    CHECK_FALSE(faithfulness(below, lo).faithful);
    const auto r = faithfulness(hi, lo);
    CHECK(r.mean_real == doctest::Approx(0.7));
    CHECK(r.mean_fake == doctest::Approx(0.3));
    CHECK_THROWS_AS(faithfulness(std::vector<double>{}, lo), ContractError);
}

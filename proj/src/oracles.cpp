#include "wegan/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace wegan::oracle {

namespace {

double rbf(std::span<const double> a, std::span<const double> b, double sigma) {
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sq += (a[k] - b[k]) * (a[k] - b[k]);
    return std::exp(-sq / (2.0 * sigma * sigma));
}

double weighted_output_sum(const Mlp& mlp, const Batch& batch, const Batch& coeffs) {
    const Batch out = forward(mlp, batch).outputs;
    double s = 0.0;
    for (std::size_t k = 0; k < out.values.size(); ++k) s += coeffs.values[k] * out.values[k];
    return s;
}

}  // namespace

double naive_mmd2(const Batch& x, const Batch& y, double sigma, MmdEstimator estimator) {
    const bool unbiased = estimator == MmdEstimator::unbiased;
    double kxx = 0.0, kyy = 0.0, kxy = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.rows; ++j)
            if (!(unbiased && i == j)) kxx += rbf(x.row(i), x.row(j), sigma);
    for (std::size_t i = 0; i < y.rows; ++i)
        for (std::size_t j = 0; j < y.rows; ++j)
            if (!(unbiased && i == j)) kyy += rbf(y.row(i), y.row(j), sigma);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < y.rows; ++j) kxy += rbf(x.row(i), y.row(j), sigma);
    const double n = static_cast<double>(x.rows);
    const double m = static_cast<double>(y.rows);
    const double nxx = unbiased ? n * (n - 1.0) : n * n;
    const double nyy = unbiased ? m * (m - 1.0) : m * m;
    return kxx / nxx + kyy / nyy - 2.0 * kxy / (n * m);
}

std::vector<double> direct_wegan_weights(std::span<const double> d, double eta) {
    std::vector<double> w(d.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        w[i] = std::pow(eta, 1.0 - d[i]);
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

double direct_margin(std::span<const double> d, double eta) {
    const auto w = direct_wegan_weights(d, eta);
    double uniform_side = 0.0, weighted_side = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        uniform_side += std::log(1.0 - d[i]);
        weighted_side += w[i] * std::log(1.0 - d[i]);
    }
    return uniform_side / static_cast<double>(d.size()) - weighted_side;
}

std::vector<double> finite_difference_gradient(const Mlp& mlp, const Batch& batch, const Batch& coeffs, double h) {
    std::vector<double> grad(mlp.params.size());
    Mlp probe = mlp;
    for (std::size_t p = 0; p < mlp.params.size(); ++p) {
        probe.params[p] = mlp.params[p] + h;
        const double up = weighted_output_sum(probe, batch, coeffs);
        probe.params[p] = mlp.params[p] - h;
        const double down = weighted_output_sum(probe, batch, coeffs);
        probe.params[p] = mlp.params[p];
        grad[p] = (up - down) / (2.0 * h);
    }
    return grad;
}

Batch finite_difference_input_gradient(const Mlp& mlp, const Batch& batch, const Batch& coeffs, double h) {
    Batch grad(batch.rows, batch.cols);
    Batch probe = batch;
    for (std::size_t k = 0; k < batch.values.size(); ++k) {
        probe.values[k] = batch.values[k] + h;
        const double up = weighted_output_sum(mlp, probe, coeffs);
        probe.values[k] = batch.values[k] - h;
        const double down = weighted_output_sum(mlp, probe, coeffs);
        probe.values[k] = batch.values[k];
        grad.values[k] = (up - down) / (2.0 * h);
    }
    return grad;
}

double max_relative_error(std::span<const double> a, std::span<const double> b, double floor) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i]), std::abs(b[i]), floor});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

}  // namespace wegan::oracle

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wegan {

/// Row-major set of fixed-dimension real vectors (one sample per row).
struct Batch {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Batch() = default;
    Batch(std::size_t rows, std::size_t cols, double fill = 0.0);

    double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }

    bool empty() const { return rows == 0; }

    friend bool operator==(const Batch&, const Batch&) = default;
};

/// Builds an n x 1 batch from a column of values.
Batch column(std::span<const double> values);

}  // namespace wegan

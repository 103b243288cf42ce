#pragma once

#include <optional>
#include <span>

#include "wegan/batch.hpp"

namespace wegan {

enum class MmdEstimator { biased, unbiased };

/// Gaussian RBF kernel k(x,y) = exp(-|x-y|^2 / (2 sigma^2)). An unset
/// bandwidth means the median heuristic on the pooled sample.
struct MmdConfig {
    std::optional<double> bandwidth;
    MmdEstimator estimator = MmdEstimator::unbiased;

    friend bool operator==(const MmdConfig&, const MmdConfig&) = default;
};

inline constexpr double kBandwidthFloor = 1e-12;

/// Squared maximum mean discrepancy between the row sets X and Y.
///
/// biased:   mean K(X,X) + mean K(Y,Y) - 2 mean K(X,Y), all pairs included.
/// unbiased: same with the diagonal dropped from the within-set sums; needs
///           at least two rows per set and can come out slightly negative.
double mmd2(const Batch& x, const Batch& y, const MmdConfig& config);

/// Lower median of all pairwise Euclidean distances in X u Y, floored at
/// 1e-12. Requires at least two pooled points.
double median_heuristic(const Batch& x, const Batch& y);

struct FaithfulnessReport {
    double mean_real = 0.0;
    double mean_fake = 0.0;
    bool faithful = false;  // mean_real > 0.5 && mean_fake < 0.5
};

FaithfulnessReport faithfulness(std::span<const double> d_real, std::span<const double> d_fake);

}  // namespace wegan

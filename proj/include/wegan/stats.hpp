#pragma once

#include <cstddef>
#include <span>

namespace wegan {

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_stddev(std::span<const double> values);

struct PairedTestResult {
    std::size_t n = 0;
    double mean_difference = 0.0;  // mean of (a_i - b_i)
    double t_statistic = 0.0;
    double p_value = 1.0;          // one-sided, alternative: mean(a - b) > 0
};

/// One-sided paired t-test of H1: E[a - b] > 0. Needs at least two pairs.
PairedTestResult paired_t_test_greater(std::span<const double> a, std::span<const double> b);

/// (baseline - variant) / baseline.
double relative_improvement(double baseline, double variant);

}  // namespace wegan

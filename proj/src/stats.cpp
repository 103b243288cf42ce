#include "wegan/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <vector>

#include "wegan/error.hpp"

namespace wegan {

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double mu = mean(values);
    double acc = 0.0;
    for (double v : values) acc += (v - mu) * (v - mu);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

PairedTestResult paired_t_test_greater(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ContractError("paired test: sample sizes differ");
    if (a.size() < 2) throw ContractError("paired test: need at least two pairs");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];

    PairedTestResult r;
    r.n = diff.size();
    r.mean_difference = mean(diff);
    const double sd = sample_stddev(diff);
    if (sd == 0.0) {
        r.t_statistic = r.mean_difference > 0 ? HUGE_VAL : (r.mean_difference < 0 ? -HUGE_VAL : 0.0);
        r.p_value = r.mean_difference > 0 ? 0.0 : 1.0;
        return r;
    }
    r.t_statistic = r.mean_difference / (sd / std::sqrt(static_cast<double>(r.n)));
    const boost::math::students_t dist(static_cast<double>(r.n - 1));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.t_statistic));
    return r;
}

double relative_improvement(double baseline, double variant) { return (baseline - variant) / baseline; }

}  // namespace wegan

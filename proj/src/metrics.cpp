#include "wegan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wegan/error.hpp"

namespace wegan {

namespace {

// Squared distances of every pooled pair, in three fixed-order blocks:
// X-X (i < j), Y-Y (i < j), X-Y (all). Buffers are per-thread scratch,
// reused across calls.
struct PairDistances {
    std::vector<double>& values;
    std::size_t xx = 0, yy = 0;
};

std::vector<double>& scratch(int which) {
    thread_local std::vector<double> buffers[2];
    return buffers[which];
}

double* append_pairs(const Batch& a, const Batch& b, bool upper, double* out) {
    const std::size_t dim = a.cols;
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* p = a.values.data() + i * dim;
        const std::size_t first = upper ? i + 1 : 0;
        const double* q = b.values.data() + first * dim;
        for (std::size_t j = first; j < b.rows; ++j, q += dim) {
            double s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double diff = p[k] - q[k];
                s += diff * diff;
            }
            *out++ = s;
        }
    }
    return out;
}

PairDistances pair_distances(const Batch& x, const Batch& y) {
    PairDistances p{scratch(0)};
    p.xx = x.rows * (x.rows - 1) / 2;
    p.yy = y.rows * (y.rows - 1) / 2;
    p.values.resize(p.xx + p.yy + x.rows * y.rows);
    double* out = p.values.data();
    out = append_pairs(x, x, true, out);
    out = append_pairs(y, y, true, out);
    append_pairs(x, y, false, out);
    return p;
}

// Lower median, taken on squared distances (same order), then rooted.
double median_bandwidth(const std::vector<double>& squared) {
    auto& work = scratch(1);
    work.assign(squared.begin(), squared.end());
    const auto mid = work.begin() + static_cast<std::ptrdiff_t>((work.size() - 1) / 2);
    std::nth_element(work.begin(), mid, work.end());
    return std::max(std::sqrt(*mid), kBandwidthFloor);
}

// Blocked kernel sum so the total does not depend on anything but the
// block layout.
double kernel_sum(const double* sq, std::size_t count, double inv_two_sigma2) {
    constexpr std::size_t block = 4096;
    double total = 0.0;
    for (std::size_t start = 0; start < count; start += block) {
        const std::size_t stop = std::min(count, start + block);
        double partial = 0.0;
        for (std::size_t k = start; k < stop; ++k) partial += std::exp(-sq[k] * inv_two_sigma2);
        total += partial;
    }
    return total;
}

}  // namespace

namespace {

void check_pair(const Batch& x, const Batch& y, const char* op) {
    if (x.rows == 0 || y.rows == 0) throw ContractError(std::string(op) + ": empty sample set");
    if (x.cols != y.cols) throw ShapeError(std::string(op) + ": sample sets have different dimensions");
}

}  // namespace

double median_heuristic(const Batch& x, const Batch& y) {
    if (x.cols != y.cols) throw ShapeError("median_heuristic: sample sets have different dimensions");
    if (x.rows + y.rows < 2) throw ContractError("median_heuristic: need at least two pooled points");
    return median_bandwidth(pair_distances(x, y).values);
}

double mmd2(const Batch& x, const Batch& y, const MmdConfig& config) {
    check_pair(x, y, "mmd2");
    if (config.bandwidth && !(*config.bandwidth > 0.0)) throw ConfigError("mmd2: bandwidth must be positive");
    if (config.estimator == MmdEstimator::unbiased && (x.rows < 2 || y.rows < 2))
        throw ContractError("mmd2: unbiased estimator needs at least two rows per set");

    const PairDistances pairs = pair_distances(x, y);
    const double sigma = config.bandwidth ? *config.bandwidth : median_bandwidth(pairs.values);
    const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
    const double n = static_cast<double>(x.rows);
    const double m = static_cast<double>(y.rows);

    const double* sq = pairs.values.data();
    const double xx_off = 2.0 * kernel_sum(sq, pairs.xx, inv_two_sigma2);
    const double yy_off = 2.0 * kernel_sum(sq + pairs.xx, pairs.yy, inv_two_sigma2);
    const double xy = kernel_sum(sq + pairs.xx + pairs.yy, x.rows * y.rows, inv_two_sigma2);

    if (config.estimator == MmdEstimator::biased)
        return (xx_off + n) / (n * n) + (yy_off + m) / (m * m) - 2.0 * xy / (n * m);
    return xx_off / (n * (n - 1.0)) + yy_off / (m * (m - 1.0)) - 2.0 * xy / (n * m);
}

FaithfulnessReport faithfulness(std::span<const double> d_real, std::span<const double> d_fake) {
    if (d_real.empty() || d_fake.empty()) throw ContractError("faithfulness: empty discriminator output");
    auto mean = [](std::span<const double> v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    FaithfulnessReport r;
    r.mean_real = mean(d_real);
    r.mean_fake = mean(d_fake);
    r.faithful = r.mean_real > 0.5 && r.mean_fake < 0.5;
    return r;
}

}  // namespace wegan

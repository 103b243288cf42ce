#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wegan/config.hpp"
#include "wegan/stats.hpp"
#include "wegan/trainer.hpp"

namespace wegan {

struct RunResult {
    WeightScheme variant;
    std::uint64_t seed = 0;
    MetricTrace trace;
};

/// Per-epoch statistics across the successful runs of one variant.
struct AggregateRow {
    std::size_t epoch = 0;
    std::size_t gen_iter = 0;
    std::size_t runs = 0;
    double mmd_mean = 0.0;
    double mmd_std = 0.0;
    double weight_var_mean = 0.0;
    double weight_var_std = 0.0;
    double mean_d_real = 0.0;
    double mean_d_fake = 0.0;
    double disc_loss = 0.0;
    double gen_loss = 0.0;
};

struct ImprovementRow {
    std::size_t epoch = 0;
    std::size_t gen_iter = 0;
    double baseline_mmd = 0.0;
    double variant_mmd = 0.0;
    std::optional<double> relative_improvement;  // unset where the baseline mean is <= 0
};

struct ImprovementSeries {
    WeightScheme variant;
    std::vector<ImprovementRow> rows;
    std::size_t seeds = 0;
    std::size_t failed_runs = 0;
};

/// Paired comparison of the per-seed mean MMD over the first `epochs`
/// records, baseline minus variant.
struct EarlyStageSummary {
    WeightScheme variant;
    std::size_t epochs = 0;
    std::size_t last_gen_iter = 0;
    double baseline_mean = 0.0;
    double variant_mean = 0.0;
    double relative_improvement = 0.0;
    PairedTestResult test;
};

struct CompareResult {
    std::vector<RunResult> runs;  // variant-major, seeds in config order
    std::vector<std::vector<AggregateRow>> aggregates;  // one per variant
    std::vector<ImprovementSeries> improvements;        // one per non-baseline variant
    std::vector<EarlyStageSummary> early_stage;         // one per non-baseline variant
    std::size_t failed_runs = 0;
};

/// Runs every (variant, seed) pair. Runs are independent and execute on
/// config.threads workers; the result does not depend on the thread count.
CompareResult compare(const ExperimentConfig& config);

/// Reduction over completed traces. Runs are ordered by seed before
/// summing, so the result is independent of the order of `runs`.
std::vector<AggregateRow> aggregate(std::vector<const MetricTrace*> traces, std::span<const std::uint64_t> seeds);

ImprovementSeries improvement_series(const WeightScheme& variant, const std::vector<AggregateRow>& baseline,
                                     const std::vector<AggregateRow>& candidate, std::size_t seeds,
                                     std::size_t failed);

std::size_t default_early_epochs(std::size_t epochs);

/// Writes traces/, aggregate_*.csv, improvement_*.csv, summary.csv and
/// manifest.json under config.out_dir. Failed runs get no trace file.
void write_compare_outputs(const ExperimentConfig& config, const CompareResult& result);

/// compare() followed by write_compare_outputs().
CompareResult run_compare(const ExperimentConfig& config);

inline constexpr const char* kTraceHeader =
    "run_id,seed,algorithm,eta,loss_family,epoch,gen_iter,mmd,weight_var,mean_d_real,mean_d_fake,disc_loss,gen_loss";

/// 17 significant digits.
std::string format_real(double x);

void write_trace_csv(std::ostream& out, const TrainConfig& config, const WeightScheme& variant, std::uint64_t seed,
                     const MetricTrace& trace, bool header = true);

}  // namespace wegan

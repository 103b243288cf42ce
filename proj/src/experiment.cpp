#include "wegan/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "wegan/error.hpp"

namespace wegan {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

// Shortest round-trip form: eta is an input value, not a computed one.
std::string eta_field(const WeightScheme& scheme) {
    if (scheme.kind != WeightKind::wegan) return {};
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, scheme.eta);
    return std::string(buf, res.ptr);
}

std::string run_id(const WeightScheme& variant, std::uint64_t seed) {
    return variant_name(variant) + "_seed" + std::to_string(seed);
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
    const auto& t = c.train;
    nlohmann::ordered_json j;
    j["batch_size"] = t.batch_size;
    j["disc_steps"] = t.disc_steps;
    j["iters"] = t.iterations;
    j["epoch_len"] = t.epoch_len;
    j["loss"] = loss_family_name(t.loss);
    j["gen_mode"] = t.loss.generator_mode == GeneratorMode::saturating ? "saturating" : "non_saturating";
    j["clip"] = t.loss.clip;
    j["lr_g"] = t.gen_optimizer.learning_rate;
    j["lr_d"] = t.disc_optimizer.learning_rate;
    j["beta1"] = t.gen_optimizer.beta1;
    j["beta2"] = t.gen_optimizer.beta2;
    j["adam_eps"] = t.gen_optimizer.epsilon;
    j["gen_dims"] = t.gen_dims;
    j["disc_dims"] = t.disc_dims;
    j["noise"] = t.noise.family == NoiseFamily::standard_normal ? "normal" : "uniform";
    j["noise_dim"] = t.noise.dim;
    j["ring_components"] = t.data.component_count;
    j["ring_radius"] = t.data.radius;
    j["ring_cov_scale"] = t.data.covariance_scale;
    j["mmd_samples"] = t.mmd_samples;
    if (t.mmd.bandwidth) j["mmd_bandwidth"] = *t.mmd.bandwidth;
    else j["mmd_bandwidth"] = "median";
    j["mmd_estimator"] = t.mmd.estimator == MmdEstimator::unbiased ? "unbiased" : "biased";
    return j;
}

}  // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trace_csv(std::ostream& out, const TrainConfig& config, const WeightScheme& variant, std::uint64_t seed,
                     const MetricTrace& trace, bool header) {
    if (header) out << kTraceHeader << '\n';
    const std::string prefix = run_id(variant, seed) + ',' + std::to_string(seed) + ',' + to_string(variant.kind) +
                               ',' + eta_field(variant) + ',' + loss_family_name(config.loss) + ',';
    for (const auto& r : trace.records) {
        out << prefix << r.epoch << ',' << r.gen_iter << ',' << format_real(r.mmd) << ',' << format_real(r.weight_var)
            << ',' << format_real(r.mean_d_real) << ',' << format_real(r.mean_d_fake) << ','
            << format_real(r.disc_loss) << ',' << format_real(r.gen_loss) << '\n';
    }
}

std::vector<AggregateRow> aggregate(std::vector<const MetricTrace*> traces, std::span<const std::uint64_t> seeds) {
    if (traces.size() != seeds.size()) throw ContractError("aggregate: one seed per trace required");
    std::vector<std::size_t> order(traces.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seeds[a] < seeds[b]; });

    std::size_t epochs = 0;
    for (const auto* t : traces) epochs = std::max(epochs, t->records.size());

    std::vector<AggregateRow> rows;
    for (std::size_t e = 0; e < epochs; ++e) {
        std::vector<double> mmd, wv, dr, df, dl, gl;
        AggregateRow row;
        for (std::size_t idx : order) {
            const auto& recs = traces[idx]->records;
            if (e >= recs.size()) continue;
            const auto& r = recs[e];
            row.epoch = r.epoch;
            row.gen_iter = r.gen_iter;
            mmd.push_back(r.mmd);
            wv.push_back(r.weight_var);
            dr.push_back(r.mean_d_real);
            df.push_back(r.mean_d_fake);
            dl.push_back(r.disc_loss);
            gl.push_back(r.gen_loss);
        }
        row.runs = mmd.size();
        row.mmd_mean = mean(mmd);
        row.mmd_std = sample_stddev(mmd);
        row.weight_var_mean = mean(wv);
        row.weight_var_std = sample_stddev(wv);
        row.mean_d_real = mean(dr);
        row.mean_d_fake = mean(df);
        row.disc_loss = mean(dl);
        row.gen_loss = mean(gl);
        rows.push_back(row);
    }
    return rows;
}

ImprovementSeries improvement_series(const WeightScheme& variant, const std::vector<AggregateRow>& baseline,
                                     const std::vector<AggregateRow>& candidate, std::size_t seeds,
                                     std::size_t failed) {
    ImprovementSeries series{variant, {}, seeds, failed};
    const std::size_t n = std::min(baseline.size(), candidate.size());
    for (std::size_t e = 0; e < n; ++e) {
        ImprovementRow row{baseline[e].epoch, baseline[e].gen_iter, baseline[e].mmd_mean, candidate[e].mmd_mean, {}};
        if (row.baseline_mmd > 0.0) row.relative_improvement = relative_improvement(row.baseline_mmd, row.variant_mmd);
        series.rows.push_back(row);
    }
    return series;
}

std::size_t default_early_epochs(std::size_t epochs) { return std::max<std::size_t>(1, epochs / 3); }

CompareResult compare(const ExperimentConfig& config) {
    ExperimentConfig checked = config;
    validate(checked);

    CompareResult result;
    for (const auto& v : checked.variants)
        for (auto seed : checked.seeds) result.runs.push_back(RunResult{v, seed, {}});

    std::size_t workers = checked.threads ? checked.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, result.runs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < result.runs.size(); i = next++) {
            TrainConfig tc = checked.train;
            tc.scheme = result.runs[i].variant;
            tc.seed = result.runs[i].seed;
            result.runs[i].trace = train(tc);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    const std::size_t nseeds = checked.seeds.size();
    for (std::size_t v = 0; v < checked.variants.size(); ++v) {
        std::vector<const MetricTrace*> ok;
        std::vector<std::uint64_t> ok_seeds;
        for (std::size_t s = 0; s < nseeds; ++s) {
            const auto& run = result.runs[v * nseeds + s];
            if (run.trace.failed()) {
                ++result.failed_runs;
                continue;
            }
            ok.push_back(&run.trace);
            ok_seeds.push_back(run.seed);
        }
        result.aggregates.push_back(aggregate(ok, ok_seeds));
    }

    for (std::size_t v = 1; v < checked.variants.size(); ++v) {
        std::size_t failed = 0;
        for (std::size_t s = 0; s < nseeds; ++s) failed += result.runs[v * nseeds + s].trace.failed();
        result.improvements.push_back(
            improvement_series(checked.variants[v], result.aggregates[0], result.aggregates[v], nseeds, failed));

        // Paired early-stage comparison over seeds where both runs completed.
        EarlyStageSummary summary;
        summary.variant = checked.variants[v];
        const std::size_t epochs = result.aggregates[0].size();
        summary.epochs = checked.early_epochs ? std::min(checked.early_epochs, epochs) : default_early_epochs(epochs);
        std::vector<double> base, cand;
        for (std::size_t s = 0; s < nseeds; ++s) {
            const auto& b = result.runs[s].trace;
            const auto& c = result.runs[v * nseeds + s].trace;
            if (b.failed() || c.failed() || b.records.size() < summary.epochs || c.records.size() < summary.epochs)
                continue;
            double bs = 0.0, cs = 0.0;
            for (std::size_t e = 0; e < summary.epochs; ++e) {
                bs += b.records[e].mmd;
                cs += c.records[e].mmd;
            }
            base.push_back(bs / static_cast<double>(summary.epochs));
            cand.push_back(cs / static_cast<double>(summary.epochs));
            summary.last_gen_iter = b.records[summary.epochs - 1].gen_iter;
        }
        summary.baseline_mean = mean(base);
        summary.variant_mean = mean(cand);
        summary.relative_improvement = relative_improvement(summary.baseline_mean, summary.variant_mean);
        if (base.size() >= 2) summary.test = paired_t_test_greater(base, cand);
        result.early_stage.push_back(summary);
    }
    return result;
}

void write_compare_outputs(const ExperimentConfig& config, const CompareResult& result) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir / "traces", ec);
    if (ec) throw IoError("cannot create '" + (config.out_dir / "traces").string() + "': " + ec.message());

    nlohmann::ordered_json manifest;
    manifest["config"] = config_json(config);
    manifest["seeds"] = config.seeds;

    nlohmann::ordered_json variants = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < config.variants.size(); ++v) {
        const auto& scheme = config.variants[v];
        const std::string name = variant_name(scheme);
        nlohmann::ordered_json entry;
        entry["name"] = name;
        entry["algorithm"] = to_string(scheme.kind);
        if (scheme.kind == WeightKind::wegan) entry["eta"] = scheme.eta;
        nlohmann::ordered_json failures = nlohmann::ordered_json::array();
        std::size_t completed = 0;
        for (const auto& run : result.runs) {
            if (!(run.variant == scheme)) continue;
            if (run.trace.failed()) {
                failures.push_back({{"seed", run.seed},
                                    {"gen_iter", run.trace.failure->gen_iter},
                                    {"kind", run.trace.failure->kind},
                                    {"message", run.trace.failure->message}});
                continue;
            }
            ++completed;
            auto out = open_out(config.out_dir / "traces" / (run_id(scheme, run.seed) + ".csv"));
            write_trace_csv(out, config.train, scheme, run.seed, run.trace);
        }
        entry["completed_runs"] = completed;
        entry["failed_runs"] = failures.size();
        entry["failures"] = failures;
        variants.push_back(entry);

        auto agg = open_out(config.out_dir / ("aggregate_" + name + ".csv"));
        agg << "algorithm,eta,epoch,gen_iter,runs,mmd_mean,mmd_std,weight_var_mean,weight_var_std,mean_d_real,"
               "mean_d_fake,disc_loss,gen_loss\n";
        for (const auto& r : result.aggregates[v])
            agg << to_string(scheme.kind) << ',' << eta_field(scheme) << ',' << r.epoch << ',' << r.gen_iter << ','
                << r.runs << ',' << format_real(r.mmd_mean) << ',' << format_real(r.mmd_std) << ','
                << format_real(r.weight_var_mean) << ',' << format_real(r.weight_var_std) << ','
                << format_real(r.mean_d_real) << ',' << format_real(r.mean_d_fake) << ',' << format_real(r.disc_loss)
                << ',' << format_real(r.gen_loss) << '\n';
    }

    for (const auto& series : result.improvements) {
        auto out = open_out(config.out_dir / ("improvement_" + variant_name(series.variant) + ".csv"));
        out << "algorithm,eta,epoch,gen_iter,baseline_mmd,variant_mmd,relative_improvement,seeds,failed_runs\n";
        for (const auto& r : series.rows)
            out << to_string(series.variant.kind) << ',' << eta_field(series.variant) << ',' << r.epoch << ','
                << r.gen_iter << ',' << format_real(r.baseline_mmd) << ',' << format_real(r.variant_mmd) << ','
                << (r.relative_improvement ? format_real(*r.relative_improvement) : std::string{}) << ','
                << series.seeds << ',' << series.failed_runs << '\n';
    }

    {
        auto out = open_out(config.out_dir / "summary.csv");
        out << "algorithm,eta,early_epochs,last_gen_iter,pairs,baseline_mmd,variant_mmd,relative_improvement,"
               "t_statistic,p_value\n";
        for (const auto& s : result.early_stage)
            out << variant_name(s.variant) << ',' << eta_field(s.variant) << ',' << s.epochs << ',' << s.last_gen_iter
                << ',' << s.test.n << ',' << format_real(s.baseline_mean) << ',' << format_real(s.variant_mean) << ','
                << format_real(s.relative_improvement) << ',' << format_real(s.test.t_statistic) << ','
                << format_real(s.test.p_value) << '\n';
    }

    manifest["variants"] = variants;
    manifest["failed_runs"] = result.failed_runs;
    auto out = open_out(config.out_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

CompareResult run_compare(const ExperimentConfig& config) {
    CompareResult result = compare(config);
    write_compare_outputs(config, result);
    return result;
}

}  // namespace wegan

// Command-line front end: single training runs, scheme comparisons and the
// built-in property checks.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "wegan/checks.hpp"
#include "wegan/config.hpp"
#include "wegan/error.hpp"
#include "wegan/experiment.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> algo;
    std::optional<double> eta;
    std::optional<std::size_t> k;
    std::optional<std::size_t> batch_size;
    std::optional<std::size_t> iters;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, std::string& config_path, Overrides& o) {
    cmd->add_option("--config", config_path, "Flat key = value config file");
    cmd->add_option("--seed", o.seed, "Master seed (compare: first of the seed range)");
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
    cmd->add_option("--algo", o.algo, "Weight scheme: uniform, wegan or iwgan");
    cmd->add_option("--eta", o.eta, "WeGAN eta in (0,1]");
    cmd->add_option("--k", o.k, "Discriminator steps per generator step");
    cmd->add_option("--batch-size", o.batch_size, "Batch size m");
    cmd->add_option("--iters", o.iters, "Generator iterations");
}

wegan::ExperimentConfig load(const std::string& path, const Overrides& o) {
    wegan::ExperimentConfig c = path.empty() ? wegan::parse_config_text("") : wegan::parse_config(path);
    if (o.seed) wegan::apply_setting(c, "seed", std::to_string(*o.seed));
    if (o.algo) wegan::apply_setting(c, "scheme", *o.algo);
    if (o.eta) {
        c.train.scheme.eta = *o.eta;
        // A bare --eta on compare selects a single WeGAN variant.
        c.variants = {wegan::WeightScheme::uniform(), wegan::WeightScheme::wegan(*o.eta)};
    }
    if (o.k) wegan::apply_setting(c, "disc_steps", std::to_string(*o.k));
    if (o.batch_size) wegan::apply_setting(c, "batch_size", std::to_string(*o.batch_size));
    if (o.iters) wegan::apply_setting(c, "iters", std::to_string(*o.iters));
    if (o.out_dir) c.out_dir = *o.out_dir;
    wegan::validate(c);
    return c;
}

int run_train(const wegan::ExperimentConfig& c) {
    std::filesystem::create_directories(c.out_dir);
    const auto path = c.out_dir / "trace.csv";
    const wegan::MetricTrace trace = wegan::train(c.train);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wegan::IoError("cannot write '" + path.string() + "'");
    wegan::write_trace_csv(out, c.train, c.train.scheme, c.train.seed, trace);
    std::cout << "wrote " << trace.records.size() << " records to " << path.string() << '\n';
    if (trace.failed()) {
        std::cerr << "run failed at generator iteration " << trace.failure->gen_iter << " (" << trace.failure->kind
                  << "): " << trace.failure->message << '\n';
        return 3;
    }
    if (!trace.records.empty())
        std::cout << "final mmd " << wegan::format_real(trace.records.back().mmd) << '\n';
    return 0;
}

int run_sweep(const wegan::ExperimentConfig& c) {
    const wegan::CompareResult result = wegan::run_compare(c);
    std::cout << "runs: " << result.runs.size() << ", failed: " << result.failed_runs << ", outputs in "
              << c.out_dir.string() << '\n';
    for (const auto& s : result.early_stage)
        std::cout << wegan::variant_name(s.variant) << ": early-stage (first " << s.epochs
                  << " epochs) relative improvement " << s.relative_improvement << ", paired p = " << s.test.p_value
                  << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted GAN training on the Gaussian ring benchmark"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;
    auto* train_cmd = app.add_subcommand("train", "Single training run; writes <out-dir>/trace.csv");
    add_common(train_cmd, config_path, overrides);
    auto* compare_cmd = app.add_subcommand("compare", "Seeded sweep over weight schemes");
    add_common(compare_cmd, config_path, overrides);
    auto* check_cmd = app.add_subcommand("check", "Run the built-in property checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_cmd->parsed()) {
            const auto report = wegan::run_checks();
            wegan::print_report(std::cout, report);
            return report.all_passed() ? 0 : 1;
        }
        const auto config = load(config_path, overrides);
        if (train_cmd->parsed()) return run_train(config);
        return run_sweep(config);
    } catch (const wegan::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const wegan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

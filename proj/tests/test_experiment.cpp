#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "wegan/experiment.hpp"

using namespace wegan;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_sweep(const fs::path& out) {
    ExperimentConfig c = parse_config_text(
        "seeds = 1, 2, 3\n"
        "batch_size = 16\n"
        "iters = 40\n"
        "epoch_len = 20\n"
        "mmd_samples = 48\n"
        "lr_g = 1e-3\n"
        "lr_d = 1e-3\n"
        "variants = wegan:0.01, iwgan\n");
    c.out_dir = out;
    c.threads = 2;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MetricTrace synthetic_trace(std::vector<double> mmds) {
    MetricTrace t;
    for (std::size_t e = 0; e < mmds.size(); ++e) t.records.push_back(MetricRecord{e + 1, 10 * (e + 1), mmds[e]});
    return t;
}

}  // namespace

TEST_CASE("relative improvement arithmetic") {
    CHECK(relative_improvement(0.2, 0.1) == 0.5);
    std::vector<AggregateRow> base(1), var(1);
    base[0].mmd_mean = 0.2;
    var[0].mmd_mean = 0.1;
    const auto series = improvement_series(WeightScheme::wegan(0.1), base, var, 5, 1);
    REQUIRE(series.rows.size() == 1);
    CHECK(*series.rows[0].relative_improvement == 0.5);
    CHECK(series.failed_runs == 1);
}

TEST_CASE("baseline against itself has zero improvement everywhere") {
    const MetricTrace a = synthetic_trace({0.3, 0.2, 0.1});
    const MetricTrace b = synthetic_trace({0.5, 0.1, 0.05});
    const std::vector<std::uint64_t> seeds{1, 2};
    const auto agg = aggregate({&a, &b}, seeds);
    const auto series = improvement_series(WeightScheme::uniform(), agg, agg, 2, 0);
    for (const auto& r : series.rows) CHECK(*r.relative_improvement == 0.0);
}

TEST_CASE("improvement is undefined where the baseline mean is not positive") {
    std::vector<AggregateRow> base(2), var(2);
    base[0].mmd_mean = -1e-4;
    base[1].mmd_mean = 0.1;
    const auto series = improvement_series(WeightScheme::wegan(0.1), base, var, 1, 0);
    CHECK_FALSE(series.rows[0].relative_improvement.has_value());
    CHECK(series.rows[1].relative_improvement.has_value());
}

TEST_CASE("aggregates do not depend on seed order") {
    const MetricTrace a = synthetic_trace({0.1, 0.2});
    const MetricTrace b = synthetic_trace({0.3, 0.7});
    const MetricTrace c = synthetic_trace({0.11, 0.13});
    const std::vector<std::uint64_t> s1{1, 2, 3}, s2{3, 1, 2};
    const auto x = aggregate({&a, &b, &c}, s1);
    const auto y = aggregate({&c, &a, &b}, s2);
    REQUIRE(x.size() == 2);
    for (std::size_t e = 0; e < 2; ++e) {
        CHECK(x[e].mmd_mean == y[e].mmd_mean);
        CHECK(x[e].mmd_std == y[e].mmd_std);
        CHECK(x[e].runs == 3);
    }
    CHECK(x[0].mmd_mean == doctest::Approx(0.17));
}

TEST_CASE("trace csv has the fixed header and 17 significant digits") {
    TrainConfig tc;
    MetricTrace t = synthetic_trace({1.0 / 3.0});
    std::ostringstream os;
    write_trace_csv(os, tc, WeightScheme::wegan(0.01), 4, t);
    const std::string text = os.str();
    CHECK(text.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
    CHECK(text.find("wegan_eta0.01_seed4,4,wegan,0.01,vanilla,1,10,0.33333333333333331,") != std::string::npos);
}

TEST_CASE("run_compare writes every artifact and is byte-reproducible") {
    const fs::path out1 = fs::temp_directory_path() / "wegan_cmp_a";
    const fs::path out2 = fs::temp_directory_path() / "wegan_cmp_b";
    fs::remove_all(out1);
    fs::remove_all(out2);

    const CompareResult r1 = run_compare(small_sweep(out1));
    ExperimentConfig second = small_sweep(out2);
    second.threads = 1;
    run_compare(second);

    CHECK(r1.runs.size() == 9);
    CHECK(r1.aggregates.size() == 3);
    CHECK(r1.improvements.size() == 2);
    for (const char* name : {"aggregate_uniform.csv", "aggregate_wegan_eta0.01.csv", "improvement_wegan_eta0.01.csv",
                             "improvement_iwgan.csv", "summary.csv", "manifest.json"}) {
        CHECK(fs::exists(out1 / name));
        CHECK(slurp(out1 / name) == slurp(out2 / name));
    }
    std::size_t traces = 0;
    for (const auto& entry : fs::directory_iterator(out1 / "traces")) {
        ++traces;
        CHECK(slurp(entry.path()) == slurp(out2 / "traces" / entry.path().filename()));
    }
    const auto manifest = nlohmann::json::parse(slurp(out1 / "manifest.json"));
    CHECK(traces + manifest["failed_runs"].get<std::size_t>() == 9);
    CHECK(manifest["seeds"].size() == 3);
    CHECK(manifest["variants"].size() == 3);

    const auto header = slurp(out1 / "traces" / "uniform_seed1.csv");
    CHECK(header.rfind(kTraceHeader, 0) == 0);
    fs::remove_all(out1);
    fs::remove_all(out2);
}

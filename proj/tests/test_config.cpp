#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "wegan/config.hpp"
#include "wegan/error.hpp"

using namespace wegan;

TEST_CASE("a file with only a seed yields the defaults") {
    const ExperimentConfig c = parse_config_text("seed = 7\n");
    CHECK(c.train.batch_size == 256);
    CHECK(c.train.disc_steps == 1);
    CHECK(c.train.iterations == 3000);
    CHECK(c.train.epoch_len == 100);
    CHECK(c.train.loss.kind == LossKind::vanilla);
    CHECK(c.train.loss.generator_mode == GeneratorMode::saturating);
    CHECK(c.train.data == RingMixtureSpec{});
    CHECK(c.train.noise == NoiseSpec{});
    CHECK(c.train.gen_dims == std::vector<std::size_t>{2, 32, 32, 2});
    CHECK(c.train.disc_dims == std::vector<std::size_t>{2, 32, 32, 1});
    CHECK(c.train.mmd_samples == 2048);
    CHECK(c.train.seed == 7);
    REQUIRE(c.seeds.size() == kDefaultRunCount);
    CHECK(c.seeds.front() == 7);
    CHECK(c.seeds.back() == 26);
    REQUIRE(c.variants.size() == 5);
    CHECK(c.variants[0] == WeightScheme::uniform());
    CHECK(c.variants[1] == WeightScheme::wegan(0.01));
    CHECK(c.variants[2] == WeightScheme::wegan(0.1));
    CHECK(c.variants[3] == WeightScheme::wegan(0.5));
    CHECK(c.variants[4] == WeightScheme::iwgan());
}

TEST_CASE("keys, comments and lists parse") {
    const ExperimentConfig c = parse_config_text(R"(
# sweep
seeds = 3, 5, 9
k = 5            # discriminator steps
batch_size = 64
iters = 400
loss = wasserstein
clip = 0.02
variants = wegan:0.5, wegan:0.9
gen_hidden = 16
mmd_bandwidth = 1.5
mmd_estimator = biased
noise = uniform
noise_dim = 4
lr_g = 2e-4
out_dir = results/run1
)");
    CHECK(c.seeds == std::vector<std::uint64_t>{3, 5, 9});
    CHECK(c.train.disc_steps == 5);
    CHECK(c.train.batch_size == 64);
    CHECK(c.train.loss == LossFamily::wasserstein(0.02));
    REQUIRE(c.variants.size() == 3);
    CHECK(c.variants[0] == WeightScheme::uniform());
    CHECK(c.variants[2] == WeightScheme::wegan(0.9));
    CHECK(c.train.gen_dims == std::vector<std::size_t>{4, 16, 2});
    CHECK(c.train.mmd.bandwidth == 1.5);
    CHECK(c.train.mmd.estimator == MmdEstimator::biased);
    CHECK(c.train.noise.family == NoiseFamily::uniform);
    CHECK(c.train.gen_optimizer.learning_rate == 2e-4);
    CHECK(c.train.disc_optimizer.learning_rate == 1e-4);
    CHECK(c.out_dir == std::filesystem::path("results/run1"));
}

TEST_CASE("wasserstein defaults exclude iwgan") {
    const ExperimentConfig c = parse_config_text("loss = wasserstein\n");
    for (const auto& v : c.variants) CHECK(v.kind != WeightKind::iwgan);
}

TEST_CASE("validation errors carry distinct diagnostics") {
    CHECK_THROWS_WITH_AS(parse_config_text("scheme = wegan\neta = 1.5\n"), doctest::Contains("(0,1]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("variants = wegan:0\n"), doctest::Contains("(0,1]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("k = 0\n"), doctest::Contains("disc_steps (k)"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("batch_size = 0\n"), doctest::Contains("batch_size (m)"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("scheme = iwgan\nloss = wasserstein\n"),
                         doctest::Contains("IWGAN is not applicable"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("loss = wasserstein\nvariants = iwgan\n"),
                         doctest::Contains("IWGAN is not applicable"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("seed 3\n"), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("colour = red\n"), doctest::Contains("unknown config key 'colour'"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("seed = 1\nseed = 2\n"), doctest::Contains("duplicate key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("iters = ten\n"), doctest::Contains("'iters'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("seeds = 1, 1\n"), doctest::Contains("duplicates"), ConfigError);
}

TEST_CASE("missing config file is an I/O error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/dir/wegan.cfg"), IoError);
}

TEST_CASE("parse_config reads a file") {
    const auto path = std::filesystem::temp_directory_path() / "wegan_test_config.cfg";
    std::ofstream(path) << "seed = 11\nruns = 2\n";
    const ExperimentConfig c = parse_config(path);
    CHECK(c.seeds == std::vector<std::uint64_t>{11, 12});
    std::filesystem::remove(path);
}

TEST_CASE("apply_setting overrides and revalidates") {
    ExperimentConfig c = parse_config_text("runs = 3\n");
    apply_setting(c, "seed", "40");
    CHECK(c.seeds == std::vector<std::uint64_t>{40, 41, 42});
    apply_setting(c, "k", "5");
    CHECK(c.train.disc_steps == 5);
    CHECK_THROWS_AS(apply_setting(c, "k", "0"), ConfigError);
}

TEST_CASE("variant names") {
    CHECK(variant_name(WeightScheme::uniform()) == "uniform");
    CHECK(variant_name(WeightScheme::wegan(0.01)) == "wegan_eta0.01");
    CHECK(variant_name(WeightScheme::iwgan()) == "iwgan");
    CHECK(variant_name(WeightScheme::iwgan(10.0)) == "iwgan_clamp10");
    CHECK(parse_variant("wegan:0.5") == WeightScheme::wegan(0.5));
    CHECK(parse_variant("iwgan:3") == WeightScheme::iwgan(3.0));
    CHECK_THROWS_AS(parse_variant("adam"), ConfigError);
}

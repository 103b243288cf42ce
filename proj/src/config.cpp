#include "wegan/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "wegan/error.hpp"

namespace wegan {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "': expected " +
                      std::string(expected));
}

double to_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a real number");
    return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
    return out;
}

std::vector<std::size_t> to_dims(std::string_view key, std::string_view v) {
    std::vector<std::size_t> dims;
    for (auto item : split_list(v)) dims.push_back(to_u64(key, item));
    return dims;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

struct ParseState {
    std::uint64_t base_seed = 1;
    std::size_t runs = kDefaultRunCount;
    bool explicit_seeds = false;
    bool explicit_variants = false;
};

}  // namespace

std::string variant_name(const WeightScheme& scheme) {
    switch (scheme.kind) {
        case WeightKind::uniform: return "uniform";
        case WeightKind::wegan: return "wegan_eta" + format_number(scheme.eta);
        case WeightKind::iwgan:
            return scheme.iwgan_clamp ? "iwgan_clamp" + format_number(*scheme.iwgan_clamp) : "iwgan";
    }
    return "unknown";
}

std::string loss_family_name(const LossFamily& loss) {
    return loss.kind == LossKind::vanilla ? "vanilla" : "wasserstein";
}

WeightScheme parse_variant(std::string_view text) {
    const auto colon = text.find(':');
    const auto head = trim(text.substr(0, colon));
    const auto arg = colon == std::string_view::npos ? std::string_view{} : trim(text.substr(colon + 1));
    WeightScheme scheme;
    if (head == "uniform" || head == "baseline") {
        if (!arg.empty()) bad_value("variants", text, "'uniform' without an argument");
        scheme = WeightScheme::uniform();
    } else if (head == "wegan") {
        if (arg.empty()) bad_value("variants", text, "'wegan:<eta>'");
        scheme = WeightScheme::wegan(to_double("variants", arg));
    } else if (head == "iwgan") {
        scheme = arg.empty() ? WeightScheme::iwgan() : WeightScheme::iwgan(to_double("variants", arg));
    } else {
        bad_value("variants", text, "uniform, wegan:<eta> or iwgan[:<clamp>]");
    }
    validate(scheme);
    return scheme;
}

namespace {

void apply(ExperimentConfig& c, ParseState& p, std::string_view key, std::string_view v) {
    auto& t = c.train;
    if (key == "seed") {
        p.base_seed = to_u64(key, v);
        t.seed = p.base_seed;
    } else if (key == "runs") {
        p.runs = to_u64(key, v);
    } else if (key == "seeds") {
        c.seeds.clear();
        for (auto item : split_list(v)) c.seeds.push_back(to_u64(key, item));
        p.explicit_seeds = true;
    } else if (key == "batch_size" || key == "m") {
        t.batch_size = to_u64(key, v);
    } else if (key == "disc_steps" || key == "k") {
        t.disc_steps = to_u64(key, v);
    } else if (key == "iters") {
        t.iterations = to_u64(key, v);
    } else if (key == "epoch_len") {
        t.epoch_len = to_u64(key, v);
    } else if (key == "loss") {
        if (v == "vanilla") t.loss.kind = LossKind::vanilla;
        else if (v == "wasserstein") t.loss.kind = LossKind::wasserstein;
        else bad_value(key, v, "vanilla or wasserstein");
    } else if (key == "gen_mode") {
        if (v == "saturating") t.loss.generator_mode = GeneratorMode::saturating;
        else if (v == "non_saturating") t.loss.generator_mode = GeneratorMode::non_saturating;
        else bad_value(key, v, "saturating or non_saturating");
    } else if (key == "clip") {
        t.loss.clip = to_double(key, v);
    } else if (key == "scheme" || key == "algo") {
        if (v == "uniform" || v == "baseline") t.scheme.kind = WeightKind::uniform;
        else if (v == "wegan") t.scheme.kind = WeightKind::wegan;
        else if (v == "iwgan") t.scheme.kind = WeightKind::iwgan;
        else bad_value(key, v, "uniform, wegan or iwgan");
    } else if (key == "eta") {
        t.scheme.eta = to_double(key, v);
    } else if (key == "iwgan_clamp") {
        t.scheme.iwgan_clamp = to_double(key, v);
    } else if (key == "variants") {
        c.variants.clear();
        for (auto item : split_list(v)) c.variants.push_back(parse_variant(item));
        p.explicit_variants = true;
    } else if (key == "lr_g") {
        t.gen_optimizer.learning_rate = to_double(key, v);
    } else if (key == "lr_d") {
        t.disc_optimizer.learning_rate = to_double(key, v);
    } else if (key == "beta1") {
        t.gen_optimizer.beta1 = t.disc_optimizer.beta1 = to_double(key, v);
    } else if (key == "beta2") {
        t.gen_optimizer.beta2 = t.disc_optimizer.beta2 = to_double(key, v);
    } else if (key == "adam_eps") {
        t.gen_optimizer.epsilon = t.disc_optimizer.epsilon = to_double(key, v);
    } else if (key == "gen_hidden" || key == "disc_hidden") {
        auto& dims = key == "gen_hidden" ? t.gen_dims : t.disc_dims;
        const auto hidden = to_dims(key, v);
        dims = {dims.front()};
        dims.insert(dims.end(), hidden.begin(), hidden.end());
        dims.push_back(key == "gen_hidden" ? RingMixtureSpec::dim : 1);
    } else if (key == "noise") {
        if (v == "normal") t.noise.family = NoiseFamily::standard_normal;
        else if (v == "uniform") t.noise.family = NoiseFamily::uniform;
        else bad_value(key, v, "normal or uniform");
    } else if (key == "noise_dim") {
        t.noise.dim = to_u64(key, v);
        t.gen_dims.front() = t.noise.dim;
    } else if (key == "ring_components") {
        t.data.component_count = to_u64(key, v);
    } else if (key == "ring_radius") {
        t.data.radius = to_double(key, v);
    } else if (key == "ring_cov_scale") {
        t.data.covariance_scale = to_double(key, v);
    } else if (key == "mmd_samples") {
        t.mmd_samples = to_u64(key, v);
    } else if (key == "mmd_bandwidth") {
        if (v == "median") t.mmd.bandwidth.reset();
        else t.mmd.bandwidth = to_double(key, v);
    } else if (key == "mmd_estimator") {
        if (v == "unbiased") t.mmd.estimator = MmdEstimator::unbiased;
        else if (v == "biased") t.mmd.estimator = MmdEstimator::biased;
        else bad_value(key, v, "biased or unbiased");
    } else if (key == "out_dir") {
        c.out_dir = std::string(v);
    } else if (key == "threads") {
        c.threads = to_u64(key, v);
    } else if (key == "early_epochs") {
        c.early_epochs = to_u64(key, v);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

std::vector<WeightScheme> default_variants(const LossFamily& loss) {
    std::vector<WeightScheme> v{WeightScheme::uniform(), WeightScheme::wegan(0.01), WeightScheme::wegan(0.1),
                                WeightScheme::wegan(0.5)};
    if (loss.kind == LossKind::vanilla) v.push_back(WeightScheme::iwgan());
    return v;
}

void finish(ExperimentConfig& c, const ParseState& p) {
    if (!p.explicit_seeds) {
        if (p.runs < 1) throw ConfigError("runs must be at least 1");
        c.seeds.clear();
        for (std::size_t i = 0; i < p.runs; ++i) c.seeds.push_back(p.base_seed + i);
    }
    if (!p.explicit_variants) c.variants = default_variants(c.train.loss);
    validate(c);
}

}  // namespace

void validate(ExperimentConfig& c) {
    if (c.train.batch_size < 1) throw ConfigError("batch_size (m) must be at least 1");
    if (c.train.disc_steps < 1) throw ConfigError("disc_steps (k) must be at least 1");
    if (c.train.scheme.kind == WeightKind::wegan && !(c.train.scheme.eta > 0.0 && c.train.scheme.eta <= 1.0))
        throw ConfigError("eta must lie in (0,1], got " + format_number(c.train.scheme.eta));
    if (c.train.scheme.kind == WeightKind::iwgan && c.train.loss.kind == LossKind::wasserstein)
        throw ConfigError("IWGAN is not applicable to the wasserstein loss family");
    validate(c.train);
    if (c.seeds.empty()) throw ConfigError("at least one seed is required");
    if (std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size())
        throw ConfigError("seed list contains duplicates");

    std::vector<WeightScheme> variants{WeightScheme::uniform()};
    for (const auto& v : c.variants) {
        validate(v);
        if (v.kind == WeightKind::iwgan && c.train.loss.kind == LossKind::wasserstein)
            throw ConfigError("IWGAN is not applicable to the wasserstein loss family");
        if (v.kind == WeightKind::uniform) continue;
        if (std::find(variants.begin(), variants.end(), v) != variants.end())
            throw ConfigError("duplicate variant '" + variant_name(v) + "'");
        variants.push_back(v);
    }
    c.variants = std::move(variants);
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
    ParseState p{config.train.seed, config.seeds.size(), true, true};
    apply(config, p, key, value);
    if (key == "seed" || key == "runs") {
        if (p.runs < 1) throw ConfigError("runs must be at least 1");
        config.seeds.clear();
        for (std::size_t i = 0; i < p.runs; ++i) config.seeds.push_back(p.base_seed + i);
    }
    validate(config);
}

ExperimentConfig parse_config_text(std::string_view text) {
    ExperimentConfig c;
    ParseState p;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("syntax error on line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(view.substr(0, eq));
        const auto value = trim(view.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("syntax error on line " + std::to_string(line_no) + ": empty key or value");
        if (!seen.insert(std::string(key)).second)
            throw ConfigError("duplicate key '" + std::string(key) + "' on line " + std::to_string(line_no));
        apply(c, p, key, value);
    }
    finish(c, p);
    return c;
}

ExperimentConfig parse_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read config file '" + file.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace wegan

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wegan/trainer.hpp"

namespace wegan {

/// A sweep: one training template, several weight schemes, several seeds.
struct ExperimentConfig {
    TrainConfig train;                   // train.scheme is the single-run scheme
    std::vector<WeightScheme> variants;  // variants[0] is always the uniform baseline
    std::vector<std::uint64_t> seeds;
    std::filesystem::path out_dir = "out";
    std::size_t threads = 0;       // 0: one per hardware thread
    std::size_t early_epochs = 0;  // 0: first third of the recorded epochs
};

inline constexpr std::size_t kDefaultRunCount = 20;

/// Parses the flat `key = value` format ('#' starts a comment). Unknown or
/// repeated keys, malformed values and invalid combinations throw
/// ConfigError with the offending line or key in the message.
ExperimentConfig parse_config_text(std::string_view text);

/// Throws IoError when the file cannot be read.
ExperimentConfig parse_config(const std::filesystem::path& file);

/// Re-validates after programmatic edits (CLI overrides). Inserts the
/// uniform baseline if missing.
void validate(ExperimentConfig& config);

/// Applies `key = value` to the config; the same keys the file accepts.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Stable identifier such as "uniform", "wegan_eta0.01", "iwgan".
std::string variant_name(const WeightScheme& scheme);

/// Parses "uniform", "wegan:<eta>", "iwgan" or "iwgan:<clamp>".
WeightScheme parse_variant(std::string_view text);

std::string loss_family_name(const LossFamily& loss);

}  // namespace wegan

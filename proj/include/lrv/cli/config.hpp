#pragma once

#include <string>
#include <vector>

#include "lrv/harness.hpp"
#include "json.hpp"

namespace lrv::cli {

/**
 * @brief Loads experiments from a config file.
 *
 * `.json` files hold {"experiments": [...]} (a run manifest has that shape too,
 * so manifests can be replayed). Anything else is read as INI text: one
 * `[name]` section per experiment, keys
 *
 *     specs = 0.5:0, 0:0.8          (ar:ma[:innovation_sd], comma separated)
 *     n, replications, burn_in, seed, overlap_power
 *     target = sigma_sq | sigma_F_sq
 *     split_half, square_scale_estimators = true | false
 *     grid.<estimator> = 1 2 5 adaptive
 *
 * Unset keys keep the ExperimentConfig defaults. Every experiment is validated.
 *
 * @throws std::runtime_error on unreadable or malformed input.
 */
[[nodiscard]] std::vector<ExperimentConfig> load_config(const std::string& path);
[[nodiscard]] std::vector<ExperimentConfig> parse_ini_config(const std::string& text);
[[nodiscard]] std::vector<ExperimentConfig> parse_json_config(const nlohmann::json& doc);

[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentConfig experiment_from_json(const nlohmann::json& j);

/// INI text reproducing the bundled part1/part2 designs.
[[nodiscard]] std::string default_config_text();

}  // namespace lrv::cli

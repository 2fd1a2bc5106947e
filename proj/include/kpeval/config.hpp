#pragma once

#include <string>

#include "json.hpp"

#include "kpeval/kp_extract.hpp"

namespace kpeval::app {

/// JSON layout:
///   { "normalization": { "strip_diacritics": true, ... },
///     "weights": [w1, ..., w8], "k": 10, "score_threshold": null }
/// Every key is optional; absent keys keep their defaults.
extract::ExtractorConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const extract::ExtractorConfig& cfg);

/// Empty path returns the default configuration.
extract::ExtractorConfig load_config(const std::string& path);

}  // namespace kpeval::app

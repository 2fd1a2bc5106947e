#include "kpeval/config.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

#include "kpeval/error.hpp"

namespace kpeval::app {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {"normalization", "weights", "k", "score_threshold"};

struct FlagField {
  const char* name;
  bool text::NormalizationConfig::*member;
};

constexpr FlagField kFlags[] = {
    {"strip_diacritics", &text::NormalizationConfig::strip_diacritics},
    {"strip_tatweel", &text::NormalizationConfig::strip_tatweel},
    {"unify_alef", &text::NormalizationConfig::unify_alef},
    {"unify_alef_maqsura", &text::NormalizationConfig::unify_alef_maqsura},
    {"unify_ta_marbuta", &text::NormalizationConfig::unify_ta_marbuta},
    {"lowercase_latin", &text::NormalizationConfig::lowercase_latin},
};

}  // namespace

extract::ExtractorConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error("config: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kTopKeys.contains(key)) throw Error(fmt::format("config: unknown key '{}'", key));
  }
  extract::ExtractorConfig cfg;
  try {
    if (j.contains("normalization")) {
      const auto& n = j.at("normalization");
      if (!n.is_object()) throw Error("config: 'normalization' must be an object");
      for (const auto& [key, value] : n.items()) {
        bool known = false;
        for (const auto& f : kFlags) {
          if (key == f.name) {
            cfg.normalization.*f.member = value.get<bool>();
            known = true;
          }
        }
        if (!known) throw Error(fmt::format("config: unknown normalization flag '{}'", key));
      }
    }
    if (j.contains("weights")) {
      const auto& w = j.at("weights");
      if (!w.is_array() || w.size() != extract::kNumFeatures) {
        throw Error(fmt::format("config: 'weights' must be an array of {} numbers", extract::kNumFeatures));
      }
      std::array<double, extract::kNumFeatures> values{};
      for (std::size_t i = 0; i < values.size(); ++i) values[i] = w[i].get<double>();
      cfg.weights = extract::WeightVector(values);
    }
    if (j.contains("k")) {
      const auto k = j.at("k").get<long long>();
      if (k < 1) throw Error("config: 'k' must be at least 1");
      cfg.k = static_cast<std::size_t>(k);
    }
    if (j.contains("score_threshold") && !j.at("score_threshold").is_null()) {
      cfg.score_threshold = j.at("score_threshold").get<double>();
    }
  } catch (const json::exception& e) {
    throw Error(fmt::format("config: {}", e.what()));
  }
  return cfg;
}

json config_to_json(const extract::ExtractorConfig& cfg) {
  json norm = json::object();
  for (const auto& f : kFlags) norm[f.name] = cfg.normalization.*f.member;
  json j;
  j["normalization"] = norm;
  j["weights"] = cfg.weights.values();
  j["k"] = cfg.k;
  j["score_threshold"] = cfg.score_threshold ? json(*cfg.score_threshold) : json(nullptr);
  return j;
}

extract::ExtractorConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open config file {}", path));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: {}", path, e.what()));
  }
  try {
    return config_from_json(j);
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace kpeval::app

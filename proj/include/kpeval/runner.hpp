#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kpeval/dataset.hpp"
#include "kpeval/kp_eval.hpp"
#include "kpeval/meta_eval.hpp"
#include "kpeval/rouge.hpp"
#include "kpeval/train.hpp"

namespace kpeval::app {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Metric { KpEval, Rouge1, Rouge2, RougeSU4 };
std::optional<Metric> parse_metric(std::string_view name);
std::string_view metric_name(Metric metric);

/// Token stream the ROUGE baselines run on.
enum class TokenMode { Lemma, Surface };
std::optional<TokenMode> parse_token_mode(std::string_view name);
std::string_view token_mode_name(TokenMode mode);

/// Runs fn(0..count-1) on up to `jobs` threads. If any call throws, the
/// exception from the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Sentences of lemma or surface tokens after normalization and analysis.
rouge::Sentences token_stream(const std::string& text, const morph::Analyzer& analyzer,
                              const text::NormalizationConfig& cfg, TokenMode mode);

struct EvaluateOptions {
  std::filesystem::path dataset_root;
  std::filesystem::path manifest;  // used instead of dataset_root when set
  std::string lexicon_path;
  std::string config_path;
  Metric metric = Metric::KpEval;
  TokenMode rouge_tokens = TokenMode::Lemma;
  eval::MissingPeerPolicy missing_peer = eval::MissingPeerPolicy::ScoreZero;
  unsigned jobs = 1;
};

struct TopicRow {
  std::string system_id;
  std::string topic_id;
  ScoreTriple scores;
  bool missing = false;
};

struct SystemRow {
  std::string system_id;
  ScoreTriple average;
  std::size_t topics_averaged = 0;
};

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct RunReport {
  Metric metric = Metric::KpEval;
  TokenMode rouge_tokens = TokenMode::Lemma;
  eval::MissingPeerPolicy missing_peer = eval::MissingPeerPolicy::ScoreZero;
  extract::ExtractorConfig config;
  InputDigest lexicon;
  InputDigest config_file;
  std::size_t lexicon_entries = 0;
  /// Dataset files, paths relative to the dataset root.
  std::vector<InputDigest> inputs;
  /// Ordered by (system_id, topic_id).
  std::vector<TopicRow> rows;
  std::vector<SystemRow> systems;
  std::vector<std::string> warnings;

  /// `system_id,topic_id,precision,recall,f`; rows for missing peers are omitted.
  std::string scores_csv() const;
  /// `system_id,avg_precision,avg_recall,avg_f`
  std::string systems_csv() const;
  nlohmann::json to_json() const;
};

RunReport run_evaluate(const EvaluateOptions& options);

/// Writes scores.csv, systems.csv and report.json into `out_dir`, creating it.
void write_report(const RunReport& report, const std::filesystem::path& out_dir);

struct ExtractResult {
  std::vector<extract::Keyphrase> keyphrases;
  std::vector<std::string> warnings;
};

ExtractResult run_extract(const std::filesystem::path& file, const std::string& lexicon_path,
                          const std::string& config_path);

/// `score<TAB>lemma lemma<TAB>surface example`, score to 5 decimals.
std::string format_keyphrase_line(const extract::Keyphrase& kp);

/// One metric column read from a score CSV.
struct MetricColumn {
  std::string name;
  std::vector<std::pair<std::string, double>> scores;
};

/// Accepts `system_id,score` (header optional) or the aggregate layout
/// `system_id,avg_precision,avg_recall,avg_f`, whose avg_f column is used.
MetricColumn read_metric_csv(const std::filesystem::path& path, std::string name);

/// Specs are `path` or `name=path`; the default name is the file stem.
MetricColumn read_metric_spec(const std::string& spec);

struct CorrelateResult {
  meta::MetricTable table;
  meta::CorrelationReport report;

  nlohmann::json to_json() const;
};

/// The first column's systems define the table order (sorted). Empty anchor
/// selects the first column.
CorrelateResult run_correlate(const std::vector<MetricColumn>& columns, std::string anchor);

struct TrainOptions {
  std::filesystem::path training_file;
  std::string lexicon_path;
  std::string config_path;
  int epochs = 200;
  double learning_rate = 0.1;
};

struct TrainOutcome {
  extract::TrainingResult training;
  /// Input config with the trained weights substituted.
  extract::ExtractorConfig config;
  std::size_t num_samples = 0;
};

/// Training file layout:
///   { "documents": [ { "path": "doc.txt" | "text": "...",
///                      "keyphrases": [ "lemma lemma", ... ] } ] }
TrainOutcome run_train(const TrainOptions& options);

}  // namespace kpeval::app

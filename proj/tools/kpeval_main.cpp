// Command-line front end: extract, evaluate, correlate, train.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kpeval/config.hpp"
#include "kpeval/error.hpp"
#include "kpeval/runner.hpp"

namespace {

using namespace kpeval;

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void write_or_print(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + out_path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyphrase-based summary evaluation"};
  app.set_version_flag("--version", app::kToolVersion);
  app.require_subcommand(1);

  std::string lexicon;
  std::string config;
  std::string out;

  auto* extract_cmd = app.add_subcommand("extract", "List the keyphrases of one document");
  std::string extract_file;
  extract_cmd->add_option("file", extract_file, "UTF-8 text file")->required();
  extract_cmd->add_option("--lexicon", lexicon, "Lexicon TSV (surface, lemma, POS)")->required();
  extract_cmd->add_option("--config", config, "Extractor config JSON");

  auto* eval_cmd = app.add_subcommand("evaluate", "Score every peer summary of a dataset");
  std::string dataset_root;
  std::string manifest;
  std::string metric = "kpeval";
  std::string rouge_tokens = "lemma";
  std::string missing_peer = "zero";
  unsigned jobs = 1;
  eval_cmd->add_option("dataset", dataset_root, "Dataset root: <topic>/peers/*.txt, <topic>/models/*.txt");
  eval_cmd->add_option("--manifest", manifest, "JSON manifest listing peer and model files");
  eval_cmd->add_option("--lexicon", lexicon, "Lexicon TSV")->required();
  eval_cmd->add_option("--config", config, "Extractor config JSON");
  eval_cmd->add_option("--metric", metric, "kpeval, rouge1, rouge2 or rougesu4")
      ->check(CLI::IsMember({"kpeval", "rouge1", "rouge2", "rougesu4"}));
  eval_cmd->add_option("--rouge-tokens", rouge_tokens, "Tokens for ROUGE: lemma or surface")
      ->check(CLI::IsMember({"lemma", "surface"}));
  eval_cmd->add_option("--missing-peer", missing_peer, "Missing peer policy: zero or skip")
      ->check(CLI::IsMember({"zero", "skip"}));
  eval_cmd->add_option("--out", out, "Output directory for scores.csv, systems.csv, report.json")->required();
  eval_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* corr_cmd = app.add_subcommand("correlate", "Pearson/Spearman agreement between metric score files");
  std::vector<std::string> metric_files;
  std::string anchor;
  corr_cmd->add_option("metrics", metric_files, "CSV files, optionally name=path")->required()->expected(2, -1);
  corr_cmd->add_option("--anchor", anchor, "Metric compared against the others (default: first)");
  corr_cmd->add_option("--out", out, "Output JSON (default: stdout)");

  auto* train_cmd = app.add_subcommand("train", "Learn feature weights from gold keyphrases");
  app::TrainOptions train;
  train_cmd->add_option("training", train.training_file, "Training JSON")->required();
  train_cmd->add_option("--lexicon", lexicon, "Lexicon TSV")->required();
  train_cmd->add_option("--config", config, "Base extractor config JSON");
  train_cmd->add_option("--epochs", train.epochs, "Gradient descent epochs")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--learning-rate", train.learning_rate, "Step size")->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", out, "Output config JSON (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract_cmd) {
      const auto result = app::run_extract(extract_file, lexicon, config);
      print_warnings(result.warnings);
      for (const auto& kp : result.keyphrases) std::cout << app::format_keyphrase_line(kp) << "\n";
    } else if (*eval_cmd) {
      if (dataset_root.empty() == manifest.empty()) {
        std::cerr << "error: give exactly one of a dataset root or --manifest\n";
        return 2;
      }
      app::EvaluateOptions opts;
      opts.dataset_root = dataset_root;
      opts.manifest = manifest;
      opts.lexicon_path = lexicon;
      opts.config_path = config;
      opts.metric = *app::parse_metric(metric);
      opts.rouge_tokens = *app::parse_token_mode(rouge_tokens);
      opts.missing_peer = missing_peer == "skip" ? eval::MissingPeerPolicy::Skip : eval::MissingPeerPolicy::ScoreZero;
      opts.jobs = jobs;
      const auto report = app::run_evaluate(opts);
      print_warnings(report.warnings);
      app::write_report(report, out);
      std::cout << report.systems_csv();
    } else if (*corr_cmd) {
      std::vector<app::MetricColumn> columns;
      for (const auto& spec : metric_files) columns.push_back(app::read_metric_spec(spec));
      const auto result = app::run_correlate(columns, anchor);
      write_or_print(out, result.to_json().dump(2) + "\n");
    } else if (*train_cmd) {
      train.lexicon_path = lexicon;
      train.config_path = config;
      const auto outcome = app::run_train(train);
      print_warnings(outcome.training.warnings);
      if (!outcome.training.loss_history.empty()) {
        std::cerr << "samples: " << outcome.num_samples << ", loss " << outcome.training.loss_history.front()
                  << " -> " << outcome.training.loss_history.back() << "\n";
      }
      write_or_print(out, app::config_to_json(outcome.config).dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

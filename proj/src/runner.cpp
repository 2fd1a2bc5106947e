#include "kpeval/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "kpeval/config.hpp"
#include "kpeval/error.hpp"

namespace kpeval::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "kpeval") return Metric::KpEval;
  if (name == "rouge1") return Metric::Rouge1;
  if (name == "rouge2") return Metric::Rouge2;
  if (name == "rougesu4") return Metric::RougeSU4;
  return std::nullopt;
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::KpEval: return "kpeval";
    case Metric::Rouge1: return "rouge1";
    case Metric::Rouge2: return "rouge2";
    case Metric::RougeSU4: return "rougesu4";
  }
  return "kpeval";
}

std::optional<TokenMode> parse_token_mode(std::string_view name) {
  if (name == "lemma") return TokenMode::Lemma;
  if (name == "surface") return TokenMode::Surface;
  return std::nullopt;
}

std::string_view token_mode_name(TokenMode mode) { return mode == TokenMode::Lemma ? "lemma" : "surface"; }

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

rouge::Sentences token_stream(const std::string& text, const morph::Analyzer& analyzer,
                              const text::NormalizationConfig& cfg, TokenMode mode) {
  rouge::Sentences out;
  for (const auto& sentence : extract::analyze_text(text, analyzer, cfg)) {
    std::vector<std::string> tokens;
    tokens.reserve(sentence.tokens.size());
    for (const auto& t : sentence.tokens) tokens.push_back(mode == TokenMode::Lemma ? t.lemma : t.surface);
    out.push_back(std::move(tokens));
  }
  return out;
}

namespace {

std::string fmt_score(double v) { return fmt::format("{:.6f}", v); }

std::string_view policy_name(eval::MissingPeerPolicy p) {
  return p == eval::MissingPeerPolicy::Skip ? "skip" : "zero";
}

InputDigest digest_file(const fs::path& path, const std::string& shown) {
  return InputDigest{shown, sha256_hex(read_text_file(path))};
}

std::string relative_to(const fs::path& p, const fs::path& root) {
  const auto rel = p.lexically_relative(root);
  return (rel.empty() ? p : rel).generic_string();
}

// Reference-side material for one topic, computed once and shared by all systems.
struct TopicRefs {
  std::vector<eval::KeyphraseSet> keyphrases;
  std::vector<rouge::Sentences> tokens;
};

}  // namespace

RunReport run_evaluate(const EvaluateOptions& options) {
  RunReport report;
  report.metric = options.metric;
  report.rouge_tokens = options.rouge_tokens;
  report.missing_peer = options.missing_peer;
  report.config = load_config(options.config_path);
  if (!options.config_path.empty()) report.config_file = digest_file(options.config_path, options.config_path);

  auto loaded = morph::load_lexicon(options.lexicon_path, report.config.normalization);
  report.lexicon = digest_file(options.lexicon_path, options.lexicon_path);
  report.lexicon_entries = loaded.lexicon.size();
  report.warnings = std::move(loaded.warnings);
  const morph::LexiconAnalyzer analyzer(loaded.lexicon);

  const DatasetLayout layout =
      options.manifest.empty() ? scan_dataset(options.dataset_root) : load_manifest(options.manifest);
  const auto systems = layout.system_ids();
  if (systems.empty()) throw Error("dataset contains no peer summaries");

  for (const auto& topic : layout.topics) {
    for (const auto& m : topic.models) report.inputs.push_back(digest_file(m, relative_to(m, layout.root)));
    for (const auto& [sys, p] : topic.peers) report.inputs.push_back(digest_file(p, relative_to(p, layout.root)));
  }
  std::sort(report.inputs.begin(), report.inputs.end(),
            [](const InputDigest& a, const InputDigest& b) { return a.path < b.path; });

  const auto& cfg = report.config;
  const bool is_kpeval = options.metric == Metric::KpEval;

  std::vector<TopicRefs> refs(layout.topics.size());
  parallel_for(layout.topics.size(), options.jobs, [&](std::size_t t) {
    for (const auto& model : layout.topics[t].models) {
      const auto content = read_text_file(model);
      if (is_kpeval) {
        refs[t].keyphrases.push_back(eval::to_set(extract::extract_keyphrases(content, analyzer, cfg)));
      } else {
        refs[t].tokens.push_back(token_stream(content, analyzer, cfg.normalization, options.rouge_tokens));
      }
    }
  });

  struct Task {
    std::size_t system;
    std::size_t topic;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    for (std::size_t t = 0; t < layout.topics.size(); ++t) tasks.push_back({s, t});
  }
  std::vector<TopicRow> results(tasks.size());
  std::vector<std::string> task_warnings(tasks.size());

  parallel_for(tasks.size(), options.jobs, [&](std::size_t i) {
    const auto& topic = layout.topics[tasks[i].topic];
    const auto& system = systems[tasks[i].system];
    auto& row = results[i];
    row.system_id = system;
    row.topic_id = topic.id;
    const auto peer = topic.peers.find(system);
    if (peer == topic.peers.end()) {
      row.missing = true;
      return;
    }
    const auto content = read_text_file(peer->second);
    switch (options.metric) {
      case Metric::KpEval: {
        const auto peer_set = eval::to_set(extract::extract_keyphrases(content, analyzer, cfg));
        const auto scored = eval::score_summary(eval::match_counts(peer_set, refs[tasks[i].topic].keyphrases));
        row.scores = scored.scores;
        if (scored.degenerate) {
          task_warnings[i] = fmt::format("system {}: topic {} produced no keyphrases on one side", system, topic.id);
        }
        break;
      }
      case Metric::Rouge1:
      case Metric::Rouge2: {
        const std::size_t n = options.metric == Metric::Rouge1 ? 1 : 2;
        row.scores = rouge::rouge_n(token_stream(content, analyzer, cfg.normalization, options.rouge_tokens),
                                    refs[tasks[i].topic].tokens, n);
        break;
      }
      case Metric::RougeSU4:
        row.scores = rouge::rouge_su(token_stream(content, analyzer, cfg.normalization, options.rouge_tokens),
                                     refs[tasks[i].topic].tokens, 4, true);
        break;
    }
  });

  for (std::size_t s = 0; s < systems.size(); ++s) {
    std::vector<ScoreTriple> triples;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].system != s) continue;
      const auto& row = results[i];
      if (!task_warnings[i].empty()) report.warnings.push_back(task_warnings[i]);
      if (row.missing) {
        if (options.missing_peer == eval::MissingPeerPolicy::Skip) {
          report.warnings.push_back(fmt::format("system {}: no peer for topic {}, skipped", row.system_id, row.topic_id));
          continue;
        }
        report.warnings.push_back(fmt::format("system {}: no peer for topic {}, scored 0", row.system_id, row.topic_id));
      }
      triples.push_back(row.scores);
    }
    report.systems.push_back(SystemRow{systems[s], eval::average(triples), triples.size()});
  }
  report.rows = std::move(results);
  return report;
}

std::string RunReport::scores_csv() const {
  std::string out = "system_id,topic_id,precision,recall,f\n";
  for (const auto& r : rows) {
    if (r.missing) continue;
    out += fmt::format("{},{},{},{},{}\n", r.system_id, r.topic_id, fmt_score(r.scores.precision),
                       fmt_score(r.scores.recall), fmt_score(r.scores.f_measure));
  }
  return out;
}

std::string RunReport::systems_csv() const {
  std::string out = "system_id,avg_precision,avg_recall,avg_f\n";
  for (const auto& s : systems) {
    out += fmt::format("{},{},{},{}\n", s.system_id, fmt_score(s.average.precision),
                       fmt_score(s.average.recall), fmt_score(s.average.f_measure));
  }
  return out;
}

json RunReport::to_json() const {
  auto triple = [](const ScoreTriple& t) {
    return json{{"precision", t.precision}, {"recall", t.recall}, {"f", t.f_measure}};
  };
  json j;
  j["tool"] = "kpeval";
  j["version"] = kToolVersion;
  j["metric"] = metric_name(metric);
  j["rouge_tokens"] = token_mode_name(rouge_tokens);
  j["missing_peer"] = policy_name(missing_peer);
  j["config"] = config_to_json(config);
  j["config_file"] = config_file.path.empty() ? json(nullptr)
                                              : json{{"path", config_file.path}, {"sha256", config_file.sha256}};
  j["lexicon"] = {{"path", lexicon.path}, {"sha256", lexicon.sha256}, {"entries", lexicon_entries}};
  json files = json::array();
  for (const auto& d : inputs) files.push_back({{"path", d.path}, {"sha256", d.sha256}});
  j["inputs"] = files;

  json sys = json::array();
  for (const auto& s : systems) {
    json topics = json::array();
    for (const auto& r : rows) {
      if (r.system_id != s.system_id) continue;
      json row = triple(r.scores);
      row["topic_id"] = r.topic_id;
      row["status"] = r.missing ? "missing" : "scored";
      topics.push_back(row);
    }
    json entry = triple(s.average);
    entry["system_id"] = s.system_id;
    entry["topics_averaged"] = s.topics_averaged;
    entry["topics"] = topics;
    sys.push_back(entry);
  }
  j["systems"] = sys;
  j["warnings"] = warnings;
  return j;
}

void write_report(const RunReport& report, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& content) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", (out_dir / name).string()));
    out << content;
  };
  write("scores.csv", report.scores_csv());
  write("systems.csv", report.systems_csv());
  write("report.json", report.to_json().dump(2) + "\n");
}

ExtractResult run_extract(const fs::path& file, const std::string& lexicon_path, const std::string& config_path) {
  const auto cfg = load_config(config_path);
  auto loaded = morph::load_lexicon(lexicon_path, cfg.normalization);
  ExtractResult out;
  out.warnings = std::move(loaded.warnings);
  out.keyphrases = extract::extract_keyphrases(read_text_file(file), loaded.lexicon, cfg);
  return out;
}

std::string format_keyphrase_line(const extract::Keyphrase& kp) {
  return fmt::format("{:.5f}\t{}\t{}", kp.score, extract::join(kp.lemma_seq), kp.surface_example);
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    fields.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& s, const fs::path& path, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(fmt::format("{}:{}: '{}' is not a number", path.string(), line, s));
}

}  // namespace

MetricColumn read_metric_csv(const fs::path& path, std::string name) {
  std::istringstream in(read_text_file(path));
  MetricColumn col;
  col.name = std::move(name);
  std::string line;
  std::size_t line_no = 0;
  std::size_t score_col = 1;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv_line(line);
    if (fields.front() == "system_id") {
      const auto it = std::find(fields.begin(), fields.end(), "avg_f");
      const auto sc = std::find(fields.begin(), fields.end(), "score");
      if (sc != fields.end()) {
        score_col = static_cast<std::size_t>(sc - fields.begin());
      } else if (it != fields.end()) {
        score_col = static_cast<std::size_t>(it - fields.begin());
      }
      continue;
    }
    if (fields.size() <= score_col) {
      throw Error(fmt::format("{}:{}: expected at least {} columns", path.string(), line_no, score_col + 1));
    }
    if (!seen.insert(fields[0]).second) {
      throw Error(fmt::format("{}:{}: duplicate system id '{}'", path.string(), line_no, fields[0]));
    }
    col.scores.emplace_back(fields[0], parse_double(fields[score_col], path, line_no));
  }
  if (col.scores.empty()) throw Error(fmt::format("{}: no scores", path.string()));
  return col;
}

MetricColumn read_metric_spec(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq != std::string::npos && eq > 0) return read_metric_csv(spec.substr(eq + 1), spec.substr(0, eq));
  return read_metric_csv(spec, fs::path(spec).stem().string());
}

CorrelateResult run_correlate(const std::vector<MetricColumn>& columns, std::string anchor) {
  if (columns.size() < 2) throw Error("correlate needs at least two metric files");
  std::set<std::string> names;
  for (const auto& c : columns) {
    if (!names.insert(c.name).second) throw Error(fmt::format("metric name '{}' given twice", c.name));
  }
  if (anchor.empty()) anchor = columns.front().name;
  if (!names.contains(anchor)) throw Error(fmt::format("anchor metric '{}' not among inputs", anchor));

  std::map<std::string, double> first(columns.front().scores.begin(), columns.front().scores.end());
  std::vector<std::string> systems;
  for (const auto& [id, v] : first) systems.push_back(id);

  meta::MetricTable table(systems);
  for (const auto& c : columns) {
    std::map<std::string, double> m(c.scores.begin(), c.scores.end());
    std::vector<std::string> only_here;
    std::vector<std::string> only_first;
    for (const auto& [id, v] : m) {
      if (!first.contains(id)) only_here.push_back(id);
    }
    for (const auto& [id, v] : first) {
      if (!m.contains(id)) only_first.push_back(id);
    }
    if (!only_here.empty() || !only_first.empty()) {
      throw Error(fmt::format("system sets differ between '{}' and '{}': only in '{}': [{}]; only in '{}': [{}]",
                              columns.front().name, c.name, columns.front().name, fmt::join(only_first, ", "),
                              c.name, fmt::join(only_here, ", ")));
    }
    std::vector<double> values;
    for (const auto& id : systems) values.push_back(m.at(id));
    table.add_metric(c.name, std::move(values));
  }
  auto report = meta::correlate_metrics(table, anchor);
  return CorrelateResult{std::move(table), std::move(report)};
}

json CorrelateResult::to_json() const {
  json j;
  j["tool"] = "kpeval";
  j["version"] = kToolVersion;
  j["anchor"] = report.anchor;
  j["systems"] = table.systems();
  json pairs = json::array();
  for (const auto& [key, c] : report.pairs) {
    pairs.push_back({{"metric_a", key.first}, {"metric_b", key.second}, {"pearson", c.pearson}, {"spearman", c.spearman}});
  }
  j["pairs"] = pairs;
  j["rankings"] = report.rankings;
  json scores = json::object();
  for (const auto& [name, v] : table.scores()) scores[name] = v;
  j["scores"] = scores;
  return j;
}

TrainOutcome run_train(const TrainOptions& options) {
  TrainOutcome out;
  out.config = load_config(options.config_path);
  const auto loaded = morph::load_lexicon(options.lexicon_path, out.config.normalization);
  const morph::LexiconAnalyzer analyzer(loaded.lexicon);

  json j;
  try {
    j = json::parse(read_text_file(options.training_file));
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: {}", options.training_file.string(), e.what()));
  }
  const auto base = options.training_file.parent_path();
  std::vector<extract::TrainingDocument> docs;
  try {
    for (const auto& d : j.at("documents")) {
      extract::TrainingDocument doc;
      if (d.contains("text")) {
        doc.text = d.at("text").get<std::string>();
      } else {
        fs::path p = d.at("path").get<std::string>();
        doc.text = read_text_file(p.is_absolute() ? p : base / p);
      }
      for (const auto& kp : d.at("keyphrases")) {
        const auto normalized = text::normalize(kp.get<std::string>(), out.config.normalization);
        std::istringstream words(normalized);
        extract::LemmaSeq seq;
        for (std::string w; words >> w;) seq.push_back(w);
        if (!seq.empty()) doc.gold.insert(std::move(seq));
      }
      docs.push_back(std::move(doc));
    }
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: {}", options.training_file.string(), e.what()));
  }
  const auto samples = extract::build_samples(docs, analyzer, out.config.normalization);
  out.num_samples = samples.size();
  out.training = extract::train_logistic(samples, options.epochs, options.learning_rate);
  out.config.weights = out.training.weights;
  return out;
}

}  // namespace kpeval::app

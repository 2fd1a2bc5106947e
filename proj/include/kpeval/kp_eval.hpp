#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kpeval/kp_extract.hpp"
#include "kpeval/scores.hpp"

namespace kpeval::eval {

using extract::LemmaSeq;
using KeyphraseSet = std::set<LemmaSeq>;

/// Keyphrase counts behind the score formulas.
///   match_total     sum over references of |peer ∩ ref|
///   ref_total       sum over references of |ref|
///   sys_total       |peer|
///   num_references  number of reference summaries
struct MatchStatistics {
  std::size_t match_total = 0;
  std::size_t ref_total = 0;
  std::size_t sys_total = 0;
  std::size_t num_references = 1;

  bool operator==(const MatchStatistics&) const = default;
};

struct ScoredSummary {
  ScoreTriple scores;
  /// Set when a denominator was zero and the affected score defaulted to 0.
  bool degenerate = false;
};

KeyphraseSet to_set(const std::vector<extract::Keyphrase>& keyphrases);

/// Throws kpeval::Error when `refs` is empty.
MatchStatistics match_counts(const KeyphraseSet& peer, const std::vector<KeyphraseSet>& refs);

/// recall    = match_total / ref_total
/// precision = match_total / (sys_total * num_references)
/// F         = 2PR / (P + R)
ScoredSummary score_summary(const MatchStatistics& stats);

struct PeerEvaluation {
  ScoredSummary result;
  MatchStatistics stats;
  std::vector<extract::Keyphrase> peer_keyphrases;
  std::vector<std::vector<extract::Keyphrase>> ref_keyphrases;
};

PeerEvaluation evaluate_peer_detailed(const std::string& peer_text, const std::vector<std::string>& ref_texts,
                                      const morph::Analyzer& analyzer, const extract::ExtractorConfig& cfg);

ScoreTriple evaluate_peer(const std::string& peer_text, const std::vector<std::string>& ref_texts,
                          const morph::Lexicon& lexicon, const extract::ExtractorConfig& cfg);

enum class MissingPeerPolicy { ScoreZero, Skip };

/// One topic's inputs; `peer_text` is empty when the system produced no summary.
struct TopicInput {
  std::optional<std::string> peer_text;
  std::vector<std::string> ref_texts;
};

struct SystemEvaluation {
  ScoreTriple average;
  std::map<std::string, ScoreTriple> per_topic;
  std::size_t topics_averaged = 0;
  std::vector<std::string> warnings;
};

/// Macro-average of per-topic scores. Throws when `topics` is empty.
SystemEvaluation evaluate_system(const std::string& system_id, const std::map<std::string, TopicInput>& topics,
                                 const morph::Analyzer& analyzer, const extract::ExtractorConfig& cfg,
                                 MissingPeerPolicy policy = MissingPeerPolicy::ScoreZero);

/// Unweighted mean of the triples, component-wise. Empty input gives zeros.
ScoreTriple average(const std::vector<ScoreTriple>& triples);

}  // namespace kpeval::eval

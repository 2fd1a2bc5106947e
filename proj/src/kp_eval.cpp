#include "kpeval/kp_eval.hpp"

#include <fmt/format.h>

#include "kpeval/error.hpp"

namespace kpeval::eval {

KeyphraseSet to_set(const std::vector<extract::Keyphrase>& keyphrases) {
  KeyphraseSet out;
  for (const auto& kp : keyphrases) out.insert(kp.lemma_seq);
  return out;
}

MatchStatistics match_counts(const KeyphraseSet& peer, const std::vector<KeyphraseSet>& refs) {
  if (refs.empty()) throw Error("at least one reference summary is required");
  MatchStatistics stats;
  stats.sys_total = peer.size();
  stats.num_references = refs.size();
  for (const auto& ref : refs) {
    stats.ref_total += ref.size();
    std::size_t common = 0;
    for (const auto& kp : peer) common += ref.contains(kp) ? 1 : 0;
    stats.match_total += common;
  }
  return stats;
}

ScoredSummary score_summary(const MatchStatistics& stats) {
  if (stats.num_references < 1) throw Error("num_references must be at least 1");
  ScoredSummary out;
  const double match = static_cast<double>(stats.match_total);
  double recall = 0.0;
  double precision = 0.0;
  if (stats.ref_total > 0) {
    recall = match / static_cast<double>(stats.ref_total);
  } else {
    out.degenerate = true;
  }
  if (stats.sys_total > 0) {
    precision = match / (static_cast<double>(stats.sys_total) * static_cast<double>(stats.num_references));
  } else {
    out.degenerate = true;
  }
  out.scores = make_triple(precision, recall);
  return out;
}

PeerEvaluation evaluate_peer_detailed(const std::string& peer_text, const std::vector<std::string>& ref_texts,
                                      const morph::Analyzer& analyzer, const extract::ExtractorConfig& cfg) {
  if (ref_texts.empty()) throw Error("at least one reference summary is required");
  PeerEvaluation ev;
  ev.peer_keyphrases = extract::extract_keyphrases(peer_text, analyzer, cfg);
  std::vector<KeyphraseSet> refs;
  for (const auto& r : ref_texts) {
    ev.ref_keyphrases.push_back(extract::extract_keyphrases(r, analyzer, cfg));
    refs.push_back(to_set(ev.ref_keyphrases.back()));
  }
  ev.stats = match_counts(to_set(ev.peer_keyphrases), refs);
  ev.result = score_summary(ev.stats);
  return ev;
}

ScoreTriple evaluate_peer(const std::string& peer_text, const std::vector<std::string>& ref_texts,
                          const morph::Lexicon& lexicon, const extract::ExtractorConfig& cfg) {
  return evaluate_peer_detailed(peer_text, ref_texts, morph::LexiconAnalyzer(lexicon), cfg).result.scores;
}

ScoreTriple average(const std::vector<ScoreTriple>& triples) {
  ScoreTriple avg;
  if (triples.empty()) return avg;
  for (const auto& t : triples) {
    avg.precision += t.precision;
    avg.recall += t.recall;
    avg.f_measure += t.f_measure;
  }
  const double n = static_cast<double>(triples.size());
  avg.precision /= n;
  avg.recall /= n;
  avg.f_measure /= n;
  return avg;
}

SystemEvaluation evaluate_system(const std::string& system_id, const std::map<std::string, TopicInput>& topics,
                                 const morph::Analyzer& analyzer, const extract::ExtractorConfig& cfg,
                                 MissingPeerPolicy policy) {
  if (topics.empty()) throw Error(fmt::format("system {}: no topics to evaluate", system_id));
  SystemEvaluation out;
  std::vector<ScoreTriple> triples;
  for (const auto& [topic, input] : topics) {
    if (!input.peer_text) {
      if (policy == MissingPeerPolicy::Skip) {
        out.warnings.push_back(fmt::format("system {}: no peer for topic {}, skipped", system_id, topic));
        continue;
      }
      out.warnings.push_back(fmt::format("system {}: no peer for topic {}, scored 0", system_id, topic));
      out.per_topic[topic] = ScoreTriple{};
      triples.push_back(ScoreTriple{});
      continue;
    }
    const auto ev = evaluate_peer_detailed(*input.peer_text, input.ref_texts, analyzer, cfg);
    if (ev.result.degenerate) {
      out.warnings.push_back(fmt::format("system {}: topic {} produced no keyphrases on one side", system_id, topic));
    }
    out.per_topic[topic] = ev.result.scores;
    triples.push_back(ev.result.scores);
  }
  out.topics_averaged = triples.size();
  out.average = average(triples);
  return out;
}

}  // namespace kpeval::eval

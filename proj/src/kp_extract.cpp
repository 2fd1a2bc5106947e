#include "kpeval/kp_extract.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kpeval/error.hpp"

namespace kpeval::extract {

using morph::PosTag;

WeightVector::WeightVector() { weights_.fill(1.0 / kNumFeatures); }

WeightVector::WeightVector(const std::array<double, kNumFeatures>& weights) : weights_(weights) {
  bool any_positive = false;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw Error("feature weights must be finite and non-negative");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw Error("at least one feature weight must be positive");
}

double WeightVector::sum() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

std::vector<CandidatePhrase> generate_candidates(const morph::AnnotatedDocument& doc) {
  std::vector<CandidatePhrase> out;
  for (const auto& sentence : doc) {
    const auto& toks = sentence.tokens;
    for (std::size_t start = 0; start < toks.size(); ++start) {
      for (std::size_t len = 1; len <= kMaxPhraseLength && start + len <= toks.size(); ++len) {
        CandidatePhrase c;
        c.tokens.assign(toks.begin() + start, toks.begin() + start + len);
        for (const auto& t : c.tokens) c.lemma_seq.push_back(t.lemma);
        c.sentence_index = sentence.index;
        c.start_position = start;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

bool accepts_start(PosTag tag) {
  switch (tag) {
    case PosTag::GeneralNoun:
    case PosTag::DefinedNoun:
    case PosTag::UndefinedNoun:
    case PosTag::CopulativeNoun:
    case PosTag::ProperNoun:
      return true;
    default:
      return false;
  }
}

bool accepts_end(PosTag tag) {
  switch (tag) {
    case PosTag::GeneralNoun:
    case PosTag::PlaceNoun:
    case PosTag::ProperNoun:
    case PosTag::DeclinedNoun:
    case PosTag::TimeNoun:
    case PosTag::AugmentedNoun:
    case PosTag::Adjective:
      return true;
    default:
      return false;
  }
}

bool accepts_middle(PosTag tag) { return tag == PosTag::Preposition || accepts_end(tag); }

bool filter_syntactic(const std::vector<PosTag>& tags) {
  if (tags.empty() || tags.size() > kMaxPhraseLength) return false;
  if (!accepts_start(tags.front()) || !accepts_end(tags.back())) return false;
  return tags.size() != 3 || accepts_middle(tags[1]);
}

bool filter_syntactic(const CandidatePhrase& candidate) {
  std::vector<PosTag> tags;
  tags.reserve(candidate.tokens.size());
  for (const auto& t : candidate.tokens) tags.push_back(t.pos);
  return filter_syntactic(tags);
}

DocumentStats::DocumentStats(const morph::AnnotatedDocument& doc) : num_sentences_(doc.size()) {
  const auto candidates = generate_candidates(doc);
  for (const auto& c : candidates) ++phrase_counts_[c.lemma_seq];
  for (const auto& c : candidates) {
    if (filter_syntactic(c)) {
      auto& m = max_accepted_[c.length()];
      m = std::max(m, phrase_counts_[c.lemma_seq]);
    }
  }
  for (const auto& sentence : doc) {
    for (const auto& t : sentence.tokens) {
      max_lemma_count_ = std::max(max_lemma_count_, ++lemma_counts_[t.lemma]);
    }
  }
}

std::size_t DocumentStats::phrase_count(const LemmaSeq& seq) const {
  const auto it = phrase_counts_.find(seq);
  return it == phrase_counts_.end() ? 0 : it->second;
}

std::size_t DocumentStats::max_accepted_count(std::size_t length) const {
  return length <= kMaxPhraseLength ? max_accepted_[length] : 0;
}

std::size_t DocumentStats::lemma_count(const std::string& lemma) const {
  const auto it = lemma_counts_.find(lemma);
  return it == lemma_counts_.end() ? 0 : it->second;
}

namespace {

double ratio(double num, double den) { return den > 0.0 ? std::clamp(num / den, 0.0, 1.0) : 0.0; }

const morph::AnnotatedSentence& sentence_of(const morph::AnnotatedDocument& doc, std::size_t index) {
  if (index < doc.size() && doc[index].index == index) return doc[index];
  for (const auto& s : doc) {
    if (s.index == index) return s;
  }
  throw Error("candidate refers to a sentence outside the document");
}

}  // namespace

FeatureVector compute_features(const CandidatePhrase& c, const morph::AnnotatedDocument& doc,
                               const DocumentStats& stats) {
  const auto& sentence = sentence_of(doc, c.sentence_index);
  const double len = static_cast<double>(c.length());
  const double sent_len = static_cast<double>(sentence.tokens.size());
  const double num_sentences = static_cast<double>(stats.num_sentences());

  std::size_t max_word = 0;
  for (const auto& lemma : c.lemma_seq) max_word = std::max(max_word, stats.lemma_count(lemma));

  FeatureVector f;
  f[0] = len / kMaxPhraseLength;
  f[1] = ratio(static_cast<double>(stats.phrase_count(c.lemma_seq)),
               static_cast<double>(stats.max_accepted_count(c.length())));
  f[2] = ratio(static_cast<double>(max_word), static_cast<double>(stats.max_lemma_count()));
  f[3] = 1.0 - ratio(static_cast<double>(c.sentence_index), std::max(1.0, num_sentences - 1.0));
  f[4] = 1.0 - ratio(static_cast<double>(c.start_position), std::max(1.0, sent_len - 1.0));
  f[5] = ratio(len, sent_len);
  f[6] = 1.0 - ratio(static_cast<double>(sentence.verb_count), sent_len);
  f[7] = sentence.is_question ? 0.0 : 1.0;
  return f;
}

FeatureVector compute_features(const CandidatePhrase& c, const morph::AnnotatedDocument& doc) {
  return compute_features(c, doc, DocumentStats(doc));
}

double score(const FeatureVector& features, const WeightVector& weights) {
  const double total = weights.sum();
  if (!(total > 0.0)) throw Error("feature weights sum to zero");
  double dot = 0.0;
  for (std::size_t i = 0; i < kNumFeatures; ++i) dot += weights[i] * features[i];
  return dot / total;
}

std::string join(const LemmaSeq& seq, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += sep;
    out += seq[i];
  }
  return out;
}

std::vector<Keyphrase> select_keyphrases(const std::vector<std::pair<CandidatePhrase, double>>& scored,
                                         std::size_t k, std::optional<double> score_threshold) {
  struct Best {
    const CandidatePhrase* phrase;
    double score;
    std::pair<std::size_t, std::size_t> first;
  };
  std::map<LemmaSeq, Best> best;
  for (const auto& [phrase, s] : scored) {
    const std::pair<std::size_t, std::size_t> at{phrase.sentence_index, phrase.start_position};
    auto [it, inserted] = best.try_emplace(phrase.lemma_seq, Best{&phrase, s, at});
    if (inserted) continue;
    auto& b = it->second;
    const std::pair<std::size_t, std::size_t> kept{b.phrase->sentence_index, b.phrase->start_position};
    if (s > b.score || (s == b.score && at < kept)) {
      b.phrase = &phrase;
      b.score = s;
    }
    b.first = std::min(b.first, at);
  }

  std::vector<Keyphrase> out;
  out.reserve(best.size());
  for (const auto& [seq, b] : best) {
    if (score_threshold && b.score < *score_threshold) continue;
    Keyphrase kp;
    kp.lemma_seq = seq;
    kp.score = b.score;
    kp.first_occurrence = b.first;
    LemmaSeq surfaces;
    for (const auto& t : b.phrase->tokens) surfaces.push_back(t.surface);
    kp.surface_example = join(surfaces);
    out.push_back(std::move(kp));
  }
  std::sort(out.begin(), out.end(), [](const Keyphrase& a, const Keyphrase& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.first_occurrence != b.first_occurrence) return a.first_occurrence < b.first_occurrence;
    return a.lemma_seq < b.lemma_seq;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<std::pair<CandidatePhrase, FeatureVector>> featurize(const morph::AnnotatedDocument& doc) {
  const DocumentStats stats(doc);
  std::vector<std::pair<CandidatePhrase, FeatureVector>> out;
  for (auto& c : generate_candidates(doc)) {
    if (!filter_syntactic(c)) continue;
    auto f = compute_features(c, doc, stats);
    out.emplace_back(std::move(c), f);
  }
  return out;
}

morph::AnnotatedDocument analyze_text(const std::string& text, const morph::Analyzer& analyzer,
                                      const text::NormalizationConfig& cfg) {
  const auto normalized = text::normalize(text, cfg);
  return morph::annotate_document(text::split_sentences(normalized), analyzer);
}

std::vector<Keyphrase> extract_keyphrases(const std::string& text, const morph::Analyzer& analyzer,
                                          const ExtractorConfig& cfg) {
  if (cfg.k < 1) throw Error("keyphrase count k must be at least 1");
  const auto doc = analyze_text(text, analyzer, cfg.normalization);
  std::vector<std::pair<CandidatePhrase, double>> scored;
  for (auto& [c, f] : featurize(doc)) {
    const double s = score(f, cfg.weights);
    scored.emplace_back(std::move(c), s);
  }
  return select_keyphrases(scored, cfg.k, cfg.score_threshold);
}

std::vector<Keyphrase> extract_keyphrases(const std::string& text, const morph::Lexicon& lexicon,
                                          const ExtractorConfig& cfg) {
  return extract_keyphrases(text, morph::LexiconAnalyzer(lexicon), cfg);
}

}  // namespace kpeval::extract

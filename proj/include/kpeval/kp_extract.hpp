#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kpeval/morph.hpp"
#include "kpeval/text_core.hpp"

namespace kpeval::extract {

using LemmaSeq = std::vector<std::string>;

inline constexpr std::size_t kMaxPhraseLength = 3;
inline constexpr std::size_t kNumFeatures = 8;

/// Contiguous 1-3 token window inside one sentence.
struct CandidatePhrase {
  std::vector<morph::AnnotatedToken> tokens;
  LemmaSeq lemma_seq;
  std::size_t sentence_index = 0;
  std::size_t start_position = 0;

  std::size_t length() const { return tokens.size(); }
};

/// Eight phrase-importance features, each in [0,1]:
///  [0] words in phrase / 3
///  [1] lemma-sequence frequency relative to the most frequent accepted phrase
///      of the same length
///  [2] frequency of the phrase's most frequent word lemma, relative to the
///      most frequent lemma in the document
///  [3] sentence location (1 = first sentence)
///  [4] position within the sentence (1 = sentence start)
///  [5] phrase length relative to its sentence
///  [6] verb-free share of the sentence
///  [7] 1 unless the sentence is a question
struct FeatureVector {
  std::array<double, kNumFeatures> values{};

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  bool operator==(const FeatureVector&) const = default;
};

/// Non-negative feature weights with at least one positive entry.
class WeightVector {
 public:
  /// Uniform 1/8 weights.
  WeightVector();
  /// Throws kpeval::Error if any weight is negative or not finite, or all are 0.
  explicit WeightVector(const std::array<double, kNumFeatures>& weights);

  static WeightVector uniform() { return WeightVector(); }

  double operator[](std::size_t i) const { return weights_[i]; }
  const std::array<double, kNumFeatures>& values() const { return weights_; }
  double sum() const;

 private:
  std::array<double, kNumFeatures> weights_;
};

struct Keyphrase {
  LemmaSeq lemma_seq;
  double score = 0.0;
  /// Earliest (sentence_index, start_position) where the lemma sequence occurs.
  std::pair<std::size_t, std::size_t> first_occurrence{0, 0};
  /// Space-joined surface tokens of the highest-scoring occurrence.
  std::string surface_example;
};

struct ExtractorConfig {
  text::NormalizationConfig normalization;
  WeightVector weights;
  std::size_t k = 10;
  std::optional<double> score_threshold;
};

std::vector<CandidatePhrase> generate_candidates(const morph::AnnotatedDocument& doc);

bool accepts_start(morph::PosTag tag);
bool accepts_end(morph::PosTag tag);
bool accepts_middle(morph::PosTag tag);

/// Syntactic filter over POS tags: noun-class start, noun/adjective end, and
/// for trigrams a preposition or end-class middle.
bool filter_syntactic(const CandidatePhrase& candidate);
bool filter_syntactic(const std::vector<morph::PosTag>& tags);

/// Precomputed document statistics for feature computation.
class DocumentStats {
 public:
  explicit DocumentStats(const morph::AnnotatedDocument& doc);

  std::size_t phrase_count(const LemmaSeq& seq) const;
  std::size_t max_accepted_count(std::size_t length) const;
  std::size_t lemma_count(const std::string& lemma) const;
  std::size_t max_lemma_count() const { return max_lemma_count_; }
  std::size_t num_sentences() const { return num_sentences_; }

 private:
  std::map<LemmaSeq, std::size_t> phrase_counts_;
  std::array<std::size_t, kMaxPhraseLength + 1> max_accepted_{};
  std::map<std::string, std::size_t> lemma_counts_;
  std::size_t max_lemma_count_ = 0;
  std::size_t num_sentences_ = 0;
};

FeatureVector compute_features(const CandidatePhrase& candidate, const morph::AnnotatedDocument& doc);
FeatureVector compute_features(const CandidatePhrase& candidate, const morph::AnnotatedDocument& doc,
                               const DocumentStats& stats);

/// Weighted mean of the features.
double score(const FeatureVector& features, const WeightVector& weights);

std::vector<Keyphrase> select_keyphrases(
    const std::vector<std::pair<CandidatePhrase, double>>& scored, std::size_t k,
    std::optional<double> score_threshold = std::nullopt);

/// Accepted candidates with their features, in document order.
std::vector<std::pair<CandidatePhrase, FeatureVector>> featurize(const morph::AnnotatedDocument& doc);

morph::AnnotatedDocument analyze_text(const std::string& text, const morph::Analyzer& analyzer,
                                      const text::NormalizationConfig& cfg);

std::vector<Keyphrase> extract_keyphrases(const std::string& text, const morph::Analyzer& analyzer,
                                          const ExtractorConfig& cfg);
std::vector<Keyphrase> extract_keyphrases(const std::string& text, const morph::Lexicon& lexicon,
                                          const ExtractorConfig& cfg);

std::string join(const LemmaSeq& seq, std::string_view sep = " ");

}  // namespace kpeval::extract

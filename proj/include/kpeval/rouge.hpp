#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kpeval/scores.hpp"

namespace kpeval::rouge {

/// Tokens grouped by sentence. N-grams and skip-bigrams never cross sentences.
using Sentences = std::vector<std::vector<std::string>>;
using Gram = std::vector<std::string>;

struct NgramMultiset {
  std::size_t n = 1;
  std::map<Gram, std::size_t> counts;

  std::size_t total() const;
};

struct SkipBigramSet {
  std::size_t max_gap = 4;
  bool include_unigrams = true;
  /// Ordered pairs are stored as two-element grams, unigrams as one-element grams.
  std::map<Gram, std::size_t> counts;

  std::size_t total() const;
};

NgramMultiset count_ngrams(const Sentences& text, std::size_t n);

/// Pairs (i, j), i < j, in one sentence with at most `max_gap` tokens between them.
SkipBigramSet count_skip_bigrams(const Sentences& text, std::size_t max_gap, bool include_unigrams);

/// Clipped overlap: sum over grams of min(peer, ref).
std::size_t clipped_overlap(const std::map<Gram, std::size_t>& peer, const std::map<Gram, std::size_t>& ref);

/// recall    = sum_r overlap_r / sum_r |ref_r|
/// precision = sum_r overlap_r / (|peer| * num_refs)
ScoreTriple rouge_n(const Sentences& peer, const std::vector<Sentences>& refs, std::size_t n);

ScoreTriple rouge_su(const Sentences& peer, const std::vector<Sentences>& refs, std::size_t max_gap = 4,
                     bool include_unigrams = true);

}  // namespace kpeval::rouge

#include "kpeval/rouge.hpp"

#include <algorithm>

#include "kpeval/error.hpp"

namespace kpeval::rouge {

namespace {

std::size_t sum_counts(const std::map<Gram, std::size_t>& counts) {
  std::size_t total = 0;
  for (const auto& [g, c] : counts) total += c;
  return total;
}

void check_refs(const std::vector<Sentences>& refs) {
  if (refs.empty()) throw Error("at least one reference token list is required");
}

template <typename Counter>
ScoreTriple overlap_score(const Sentences& peer, const std::vector<Sentences>& refs, Counter&& counter) {
  check_refs(refs);
  const auto peer_counts = counter(peer);
  const std::size_t peer_total = sum_counts(peer_counts);
  std::size_t hits = 0;
  std::size_t ref_total = 0;
  for (const auto& r : refs) {
    const auto ref_counts = counter(r);
    hits += clipped_overlap(peer_counts, ref_counts);
    ref_total += sum_counts(ref_counts);
  }
  const double h = static_cast<double>(hits);
  const double recall = ref_total ? h / static_cast<double>(ref_total) : 0.0;
  const double precision =
      peer_total ? h / (static_cast<double>(peer_total) * static_cast<double>(refs.size())) : 0.0;
  return make_triple(precision, recall);
}

}  // namespace

std::size_t NgramMultiset::total() const { return sum_counts(counts); }
std::size_t SkipBigramSet::total() const { return sum_counts(counts); }

NgramMultiset count_ngrams(const Sentences& text, std::size_t n) {
  if (n == 0) throw Error("n-gram order must be positive");
  NgramMultiset out;
  out.n = n;
  for (const auto& sentence : text) {
    for (std::size_t i = 0; i + n <= sentence.size(); ++i) {
      ++out.counts[Gram(sentence.begin() + i, sentence.begin() + i + n)];
    }
  }
  return out;
}

SkipBigramSet count_skip_bigrams(const Sentences& text, std::size_t max_gap, bool include_unigrams) {
  SkipBigramSet out;
  out.max_gap = max_gap;
  out.include_unigrams = include_unigrams;
  for (const auto& sentence : text) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (include_unigrams) ++out.counts[Gram{sentence[i]}];
      const std::size_t last = std::min(sentence.size(), i + max_gap + 2);
      for (std::size_t j = i + 1; j < last; ++j) ++out.counts[Gram{sentence[i], sentence[j]}];
    }
  }
  return out;
}

std::size_t clipped_overlap(const std::map<Gram, std::size_t>& peer, const std::map<Gram, std::size_t>& ref) {
  std::size_t hits = 0;
  for (const auto& [g, c] : ref) {
    const auto it = peer.find(g);
    if (it != peer.end()) hits += std::min(c, it->second);
  }
  return hits;
}

ScoreTriple rouge_n(const Sentences& peer, const std::vector<Sentences>& refs, std::size_t n) {
  if (n != 1 && n != 2) throw Error("rouge_n supports n = 1 or 2");
  return overlap_score(peer, refs, [n](const Sentences& s) { return count_ngrams(s, n).counts; });
}

ScoreTriple rouge_su(const Sentences& peer, const std::vector<Sentences>& refs, std::size_t max_gap,
                     bool include_unigrams) {
  return overlap_score(peer, refs, [&](const Sentences& s) {
    return count_skip_bigrams(s, max_gap, include_unigrams).counts;
  });
}

}  // namespace kpeval::rouge

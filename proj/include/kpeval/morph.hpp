#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kpeval/text_core.hpp"

namespace kpeval::morph {

enum class PosTag {
  GeneralNoun,
  DefinedNoun,
  UndefinedNoun,
  CopulativeNoun,
  ProperNoun,
  PlaceNoun,
  DeclinedNoun,
  TimeNoun,
  AugmentedNoun,
  Adjective,
  Preposition,
  Verb,
  Particle,
  Pronoun,
  Number,
  Unknown,
};

inline constexpr std::size_t kPosTagCount = 16;

std::string_view pos_name(PosTag tag);
std::optional<PosTag> parse_pos(std::string_view name);
/// All tags in declaration order.
const std::vector<PosTag>& all_pos_tags();

struct LexEntry {
  std::string lemma;
  PosTag pos = PosTag::Unknown;

  bool operator==(const LexEntry&) const = default;
};

/// Exact-match surface -> (lemma, pos) table. Immutable once loaded, so a
/// single instance can be shared across threads.
class Lexicon {
 public:
  Lexicon() = default;

  /// Adds or replaces an entry. Returns true if an existing entry was replaced.
  bool insert(std::string surface, LexEntry entry);
  const LexEntry* lookup(std::string_view surface) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::string& source_path() const { return source_path_; }
  void set_source_path(std::string path) { source_path_ = std::move(path); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, LexEntry, Hash, std::equal_to<>> entries_;
  std::string source_path_;
};

struct LoadResult {
  Lexicon lexicon;
  std::vector<std::string> warnings;
};

/// Reads a `surface<TAB>lemma<TAB>pos` file. Surfaces and lemmas are passed
/// through `normalize` with `cfg` so lookups agree with normalized text.
/// Blank lines and lines starting with '#' are skipped; a repeated surface
/// replaces the earlier row and produces a warning.
LoadResult load_lexicon(const std::string& path, const text::NormalizationConfig& cfg = {});
LoadResult parse_lexicon(std::string_view content, const std::string& source_name,
                         const text::NormalizationConfig& cfg = {});

enum class Origin { Lexicon, Heuristic, Identity };
std::string_view origin_name(Origin origin);

struct AnnotatedToken {
  std::string surface;
  std::string lemma;
  PosTag pos = PosTag::Unknown;
  Origin origin = Origin::Identity;
  std::size_t sentence_index = 0;
  std::size_t position_in_sentence = 0;
};

struct AnnotatedSentence {
  std::vector<AnnotatedToken> tokens;
  bool is_question = false;
  std::size_t verb_count = 0;
  std::size_t index = 0;
};

using AnnotatedDocument = std::vector<AnnotatedSentence>;

/// Lemma/POS backend. Implementations must be deterministic and total.
class Analyzer {
 public:
  virtual ~Analyzer() = default;
  virtual AnnotatedToken analyze(const text::SurfaceToken& token) const = 0;
};

/// Lexicon lookup, then proclitic stripping, then suffix stripping, then
/// identity. The lexicon must outlive the analyzer.
class LexiconAnalyzer final : public Analyzer {
 public:
  explicit LexiconAnalyzer(const Lexicon& lexicon) : lexicon_(&lexicon) {}
  AnnotatedToken analyze(const text::SurfaceToken& token) const override;

 private:
  const Lexicon* lexicon_;
};

AnnotatedToken analyze(const text::SurfaceToken& token, const Lexicon& lexicon);

/// Forms reachable from `surface` by removing proclitics, shallowest first:
/// at most one conjunction (و ف), one preposition (ب ك ل) and the article ال.
/// The input itself is not included.
std::vector<std::string> proclitic_variants(std::string_view surface);

AnnotatedDocument annotate_document(const std::vector<text::RawSentence>& sentences,
                                    const Analyzer& analyzer);
AnnotatedDocument annotate_document(const std::vector<text::RawSentence>& sentences,
                                    const Lexicon& lexicon);

}  // namespace kpeval::morph

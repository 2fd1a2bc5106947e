#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kpeval::text {

/// Character-level normalization switches. Arabic flags default on except
/// ta-marbuta unification, which would merge lemmas such as قرية with قريه.
struct NormalizationConfig {
  bool strip_diacritics = true;
  bool strip_tatweel = true;
  bool unify_alef = true;          // إ أ آ -> ا
  bool unify_alef_maqsura = true;  // ى -> ي
  bool unify_ta_marbuta = false;   // ة -> ه
  bool lowercase_latin = true;

  bool operator==(const NormalizationConfig&) const = default;
};

enum class Terminator { Period, Question, Exclamation, None };

struct RawSentence {
  std::string text;
  std::size_t index = 0;
  Terminator terminator = Terminator::None;
};

struct SurfaceToken {
  std::string text;
  std::size_t sentence_index = 0;
  std::size_t position_in_sentence = 0;
};

/// Applies the enabled transforms; throws Utf8Error on malformed input.
std::string normalize(std::string_view text, const NormalizationConfig& cfg = {});

/// Splits on . ! ? ؟ ؛ and newline. Segments are trimmed; empty ones dropped.
std::vector<RawSentence> split_sentences(std::string_view text);

/// Whitespace split with edge punctuation stripped from each token.
std::vector<SurfaceToken> tokenize(const RawSentence& sentence);

bool is_arabic_diacritic(char32_t cp);
bool is_punctuation(char32_t cp);
bool is_space(char32_t cp);

std::string_view terminator_name(Terminator t);

}  // namespace kpeval::text

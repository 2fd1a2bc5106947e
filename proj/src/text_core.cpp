#include "kpeval/text_core.hpp"

#include <algorithm>

#include "kpeval/utf8.hpp"

namespace kpeval::text {

namespace {

constexpr char32_t kTatweel = 0x0640;
constexpr char32_t kAlef = 0x0627;
constexpr char32_t kAlefHamzaAbove = 0x0623;
constexpr char32_t kAlefHamzaBelow = 0x0625;
constexpr char32_t kAlefMadda = 0x0622;
constexpr char32_t kAlefMaqsura = 0x0649;
constexpr char32_t kYeh = 0x064A;
constexpr char32_t kTaMarbuta = 0x0629;
constexpr char32_t kHeh = 0x0647;
constexpr char32_t kArabicQuestion = 0x061F;
constexpr char32_t kArabicSemicolon = 0x061B;

std::u32string_view trim(std::u32string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_arabic_diacritic(char32_t cp) {
  // harakat, tanween, shadda, sukun, and the extended marks up to U+065F,
  // plus superscript alef
  return (cp >= 0x064B && cp <= 0x065F) || cp == 0x0670;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x00A0: case 0x2000: case 0x2001: case 0x2002: case 0x2003:
    case 0x2004: case 0x2005: case 0x2006: case 0x2007: case 0x2008:
    case 0x2009: case 0x200A: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return false;
  }
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0x00AB: case 0x00BB:                             // « »
    case 0x060C: case 0x061B: case 0x061F: case 0x066A:   // ، ؛ ؟ ٪
    case 0x066B: case 0x066C: case 0x06D4:
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:
    case 0x2026:
      return true;
    default:
      return false;
  }
}

std::string normalize(std::string_view text, const NormalizationConfig& cfg) {
  const std::u32string cps = utf8::decode(text);
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : cps) {
    if (cfg.strip_diacritics && is_arabic_diacritic(cp)) continue;
    if (cfg.strip_tatweel && cp == kTatweel) continue;
    if (cfg.unify_alef && (cp == kAlefHamzaAbove || cp == kAlefHamzaBelow || cp == kAlefMadda)) {
      cp = kAlef;
    } else if (cfg.unify_alef_maqsura && cp == kAlefMaqsura) {
      cp = kYeh;
    } else if (cfg.unify_ta_marbuta && cp == kTaMarbuta) {
      cp = kHeh;
    } else if (cfg.lowercase_latin && cp >= U'A' && cp <= U'Z') {
      cp = cp - U'A' + U'a';
    }
    utf8::append(out, cp);
  }
  return out;
}

std::vector<RawSentence> split_sentences(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  std::vector<RawSentence> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end, Terminator term) {
    const auto segment = trim(std::u32string_view(cps).substr(start, end - start));
    if (!segment.empty()) {
      out.push_back(RawSentence{utf8::encode(segment), out.size(), term});
    }
    start = end + 1;
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    switch (cps[i]) {
      case U'.': flush(i, Terminator::Period); break;
      case U'!': flush(i, Terminator::Exclamation); break;
      case U'?':
      case kArabicQuestion: flush(i, Terminator::Question); break;
      case kArabicSemicolon:
      case U'\n': flush(i, Terminator::None); break;
      default: break;
    }
  }
  if (start < cps.size()) flush(cps.size(), Terminator::None);
  return out;
}

std::vector<SurfaceToken> tokenize(const RawSentence& sentence) {
  const std::u32string cps = utf8::decode(sentence.text);
  std::vector<SurfaceToken> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    std::u32string_view word(cps.data() + i, j - i);
    while (!word.empty() && is_punctuation(word.front())) word.remove_prefix(1);
    while (!word.empty() && is_punctuation(word.back())) word.remove_suffix(1);
    if (!word.empty()) {
      out.push_back(SurfaceToken{utf8::encode(word), sentence.index, out.size()});
    }
    i = j;
  }
  return out;
}

std::string_view terminator_name(Terminator t) {
  switch (t) {
    case Terminator::Period: return "period";
    case Terminator::Question: return "question";
    case Terminator::Exclamation: return "exclamation";
    case Terminator::None: return "none";
  }
  return "none";
}

}  // namespace kpeval::text

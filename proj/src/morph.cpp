#include "kpeval/morph.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "kpeval/error.hpp"
#include "kpeval/utf8.hpp"

namespace kpeval::morph {

namespace {

constexpr std::array<std::string_view, kPosTagCount> kPosNames = {
    "GeneralNoun",  "DefinedNoun", "UndefinedNoun", "CopulativeNoun",
    "ProperNoun",   "PlaceNoun",   "DeclinedNoun",  "TimeNoun",
    "AugmentedNoun", "Adjective",  "Preposition",   "Verb",
    "Particle",     "Pronoun",     "Number",        "Unknown",
};

constexpr std::array<char32_t, 2> kConjunctions = {0x0648, 0x0641};          // و ف
constexpr std::array<char32_t, 3> kPrepositions = {0x0628, 0x0643, 0x0644};  // ب ك ل
constexpr std::u32string_view kArticle = U"ال";                    // ال

// ون ين ات ة ه ها هم
constexpr std::array<std::u32string_view, 7> kSuffixes = {
    U"ون", U"ين", U"ات", U"ة",
    U"ه",       U"ها", U"هم",
};

// Shortest stem left after removing an affix.
constexpr std::size_t kMinStem = 2;

template <std::size_t N>
bool contains(const std::array<char32_t, N>& set, char32_t cp) {
  for (char32_t c : set) {
    if (c == cp) return true;
  }
  return false;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::string_view pos_name(PosTag tag) { return kPosNames[static_cast<std::size_t>(tag)]; }

std::optional<PosTag> parse_pos(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

const std::vector<PosTag>& all_pos_tags() {
  static const std::vector<PosTag> tags = [] {
    std::vector<PosTag> v;
    for (std::size_t i = 0; i < kPosTagCount; ++i) v.push_back(static_cast<PosTag>(i));
    return v;
  }();
  return tags;
}

std::string_view origin_name(Origin origin) {
  switch (origin) {
    case Origin::Lexicon: return "lexicon";
    case Origin::Heuristic: return "heuristic";
    case Origin::Identity: return "identity";
  }
  return "identity";
}

bool Lexicon::insert(std::string surface, LexEntry entry) {
  auto [it, inserted] = entries_.insert_or_assign(std::move(surface), std::move(entry));
  return !inserted;
}

const LexEntry* Lexicon::lookup(std::string_view surface) const {
  const auto it = entries_.find(surface);
  return it == entries_.end() ? nullptr : &it->second;
}

LoadResult parse_lexicon(std::string_view content, const std::string& source_name,
                         const text::NormalizationConfig& cfg) {
  LoadResult result;
  result.lexicon.set_source_path(source_name);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw LexiconError(source_name, line_no,
                         fmt::format("expected 3 tab-separated fields, got {}", fields.size()));
    }
    const auto tag = parse_pos(fields[2]);
    if (!tag) {
      throw LexiconError(source_name, line_no, fmt::format("unknown POS tag '{}'", fields[2]));
    }
    std::string surface;
    std::string lemma;
    try {
      surface = text::normalize(fields[0], cfg);
      lemma = text::normalize(fields[1], cfg);
    } catch (const Utf8Error& e) {
      throw LexiconError(source_name, line_no, e.what());
    }
    if (surface.empty() || lemma.empty()) {
      throw LexiconError(source_name, line_no, "empty surface or lemma");
    }
    if (result.lexicon.insert(surface, LexEntry{std::move(lemma), *tag})) {
      result.warnings.push_back(fmt::format("{}:{}: duplicate surface form '{}' replaces earlier entry",
                                            source_name, line_no, surface));
    }
  }
  return result;
}

LoadResult load_lexicon(const std::string& path, const text::NormalizationConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError(path, 0, "cannot open lexicon file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str(), path, cfg);
}

std::vector<std::string> proclitic_variants(std::string_view surface) {
  std::vector<std::string> variants;
  std::u32string_view rest;
  const std::u32string cps = utf8::decode(surface);
  rest = cps;

  auto strip_one = [&](auto&& pred) {
    if (rest.size() > kMinStem && pred(rest.front())) {
      rest.remove_prefix(1);
      variants.push_back(utf8::encode(rest));
    }
  };
  strip_one([](char32_t c) { return contains(kConjunctions, c); });
  strip_one([](char32_t c) { return contains(kPrepositions, c); });
  if (rest.size() >= kArticle.size() + kMinStem && rest.starts_with(kArticle)) {
    rest.remove_prefix(kArticle.size());
    variants.push_back(utf8::encode(rest));
  }
  return variants;
}

AnnotatedToken analyze(const text::SurfaceToken& token, const Lexicon& lexicon) {
  AnnotatedToken out;
  out.surface = token.text;
  out.sentence_index = token.sentence_index;
  out.position_in_sentence = token.position_in_sentence;

  auto take = [&](const LexEntry& entry, Origin origin) {
    out.lemma = entry.lemma;
    out.pos = entry.pos;
    out.origin = origin;
    return out;
  };

  if (const auto* entry = lexicon.lookup(token.text)) return take(*entry, Origin::Lexicon);

  const auto variants = proclitic_variants(token.text);
  for (const auto& v : variants) {
    if (const auto* entry = lexicon.lookup(v)) return take(*entry, Origin::Heuristic);
  }

  std::vector<std::string> forms;
  forms.reserve(variants.size() + 1);
  forms.push_back(token.text);
  forms.insert(forms.end(), variants.begin(), variants.end());
  for (const auto& form : forms) {
    const std::u32string cps = utf8::decode(form);
    for (auto suffix : kSuffixes) {
      if (cps.size() >= suffix.size() + kMinStem && std::u32string_view(cps).ends_with(suffix)) {
        const auto stem = utf8::encode(std::u32string_view(cps).substr(0, cps.size() - suffix.size()));
        if (const auto* entry = lexicon.lookup(stem)) return take(*entry, Origin::Heuristic);
      }
    }
  }

  out.lemma = token.text;
  out.pos = PosTag::Unknown;
  out.origin = Origin::Identity;
  return out;
}

AnnotatedToken LexiconAnalyzer::analyze(const text::SurfaceToken& token) const {
  return morph::analyze(token, *lexicon_);
}

AnnotatedDocument annotate_document(const std::vector<text::RawSentence>& sentences,
                                    const Analyzer& analyzer) {
  AnnotatedDocument doc;
  doc.reserve(sentences.size());
  for (const auto& raw : sentences) {
    AnnotatedSentence sentence;
    sentence.index = raw.index;
    sentence.is_question = raw.terminator == text::Terminator::Question;
    for (const auto& token : text::tokenize(raw)) {
      sentence.tokens.push_back(analyzer.analyze(token));
      if (sentence.tokens.back().pos == PosTag::Verb) ++sentence.verb_count;
    }
    doc.push_back(std::move(sentence));
  }
  return doc;
}

AnnotatedDocument annotate_document(const std::vector<text::RawSentence>& sentences,
                                    const Lexicon& lexicon) {
  return annotate_document(sentences, LexiconAnalyzer(lexicon));
}

}  // namespace kpeval::morph

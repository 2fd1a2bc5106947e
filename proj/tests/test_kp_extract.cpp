#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "kpeval/error.hpp"
#include "kpeval/kp_extract.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace kpeval;
using extract::CandidatePhrase;
using extract::FeatureVector;
using extract::LemmaSeq;
using extract::WeightVector;
using morph::PosTag;

const char* kExampleLexicon =
    "المعاهد\tمعهد\tGeneralNoun\n"
    "الأبراج\tبرج\tGeneralNoun\n"
    "العالية\tعالي\tAdjective\n"
    "القرى\tقرية\tGeneralNoun\n";

morph::AnnotatedDocument annotate(const std::string& s, const morph::Lexicon& lex) {
  return extract::analyze_text(s, morph::LexiconAnalyzer(lex), {});
}

morph::Lexicon abc_lexicon() {
  return morph::parse_lexicon("x\tx\tGeneralNoun\ny\ty\tGeneralNoun\nz\tz\tAdjective\n"
                              "v\tv\tVerb\np\tp\tPreposition\n",
                              "abc")
      .lexicon;
}

std::set<LemmaSeq> lemma_set(const std::vector<extract::Keyphrase>& kps) {
  std::set<LemmaSeq> s;
  for (const auto& k : kps) s.insert(k.lemma_seq);
  return s;
}

TEST(GenerateCandidates, ThreeTokenSentence) {
  const auto doc = annotate("x y z", abc_lexicon());
  const auto c = extract::generate_candidates(doc);
  ASSERT_EQ(c.size(), 6u);
  std::size_t uni = 0, bi = 0, tri = 0;
  for (const auto& cand : c) {
    uni += cand.length() == 1;
    bi += cand.length() == 2;
    tri += cand.length() == 3;
    EXPECT_EQ(cand.lemma_seq.size(), cand.tokens.size());
  }
  EXPECT_EQ(uni, 3u);
  EXPECT_EQ(bi, 2u);
  EXPECT_EQ(tri, 1u);
}

TEST(GenerateCandidates, EmptyDocument) { EXPECT_TRUE(extract::generate_candidates({}).empty()); }

TEST(GenerateCandidates, NeverCrossesSentences) {
  const auto doc = annotate("x y. z x", abc_lexicon());
  const auto c = extract::generate_candidates(doc);
  EXPECT_EQ(c.size(), 6u);  // 4 unigrams + 2 bigrams
  for (const auto& cand : c) {
    for (const auto& t : cand.tokens) EXPECT_EQ(t.sentence_index, cand.sentence_index);
  }
}

TEST(FilterSyntactic, ExamplePhrase) {
  const auto lex = morph::parse_lexicon(kExampleLexicon, "t1").lexicon;
  const auto doc = annotate("المعاهد العالية بالقرى", lex);
  std::set<LemmaSeq> accepted;
  std::set<LemmaSeq> rejected;
  for (const auto& c : extract::generate_candidates(doc)) {
    (extract::filter_syntactic(c) ? accepted : rejected).insert(c.lemma_seq);
  }
  const std::set<LemmaSeq> want = {{"معهد"}, {"معهد", "عالي"}, {"معهد", "عالي", "قرية"}, {"قرية"}};
  EXPECT_EQ(accepted, want);
  EXPECT_TRUE(rejected.contains(LemmaSeq{"عالي"}));
  EXPECT_TRUE(rejected.contains(LemmaSeq({"عالي", "قرية"})));
}

TEST(FilterSyntactic, AdjectiveUnigramRejected) {
  EXPECT_FALSE(extract::filter_syntactic(std::vector<PosTag>{PosTag::Adjective}));
}

TEST(FilterSyntactic, DefinedNounUnigramRejected) {
  EXPECT_FALSE(extract::filter_syntactic(std::vector<PosTag>{PosTag::DefinedNoun}));
  EXPECT_TRUE(extract::filter_syntactic(std::vector<PosTag>{PosTag::GeneralNoun}));
  EXPECT_TRUE(extract::filter_syntactic(std::vector<PosTag>{PosTag::DefinedNoun, PosTag::Adjective}));
}

TEST(FilterSyntactic, MatchesGoldenTable) {
  std::ifstream in(KPEVAL_TEST_DATA "/filter_golden.txt");
  ASSERT_TRUE(in);
  std::set<std::vector<PosTag>> golden;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::vector<PosTag> tags;
    for (std::string w; words >> w;) tags.push_back(*morph::parse_pos(w));
    golden.insert(tags);
  }
  ASSERT_EQ(golden.size(), 317u);

  const auto& all = morph::all_pos_tags();
  std::size_t cases = 0;
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      std::vector<PosTag> tags;
      for (auto i : idx) tags.push_back(all[i]);
      EXPECT_EQ(extract::filter_syntactic(tags), golden.contains(tags));
      ++cases;
      std::size_t k = 0;
      while (k < len && ++idx[k] == all.size()) idx[k++] = 0;
      if (k == len) break;
    }
  }
  EXPECT_EQ(cases, 16u + 256u + 4096u);
}

TEST(ComputeFeatures, WholeSentenceBoundary) {
  const auto doc = annotate("x z y", abc_lexicon());
  const auto cands = extract::generate_candidates(doc);
  const auto it = std::find_if(cands.begin(), cands.end(), [](const auto& c) { return c.length() == 3; });
  ASSERT_NE(it, cands.end());
  ASSERT_TRUE(extract::filter_syntactic(*it));
  const auto f = extract::compute_features(*it, doc);
  EXPECT_DOUBLE_EQ(f[0], 1.0);
  EXPECT_DOUBLE_EQ(f[1], 1.0);
  EXPECT_DOUBLE_EQ(f[3], 1.0);
  EXPECT_DOUBLE_EQ(f[4], 1.0);
  EXPECT_DOUBLE_EQ(f[5], 1.0);
  EXPECT_DOUBLE_EQ(f[6], 1.0);
  EXPECT_DOUBLE_EQ(f[7], 1.0);
}

TEST(ComputeFeatures, QuestionSentence) {
  const auto doc = annotate("v x y?", abc_lexicon());
  for (const auto& [c, f] : extract::featurize(doc)) EXPECT_DOUBLE_EQ(f[7], 0.0);
}

TEST(ComputeFeatures, PhraseFrequencyWithinLength) {
  // x twice, y once; both unigrams
  const auto doc = annotate("x v y. x", abc_lexicon());
  std::map<LemmaSeq, double> f2;
  for (const auto& [c, f] : extract::featurize(doc)) f2[c.lemma_seq] = f[1];
  EXPECT_DOUBLE_EQ(f2.at({"x"}), 1.0);
  EXPECT_DOUBLE_EQ(f2.at({"y"}), 0.5);
}

TEST(ComputeFeatures, HandComputedVector) {
  // sentence 0: v x z p y  (5 tokens, 1 verb); sentence 1: x y
  const auto doc = annotate("v x z p y. x y", abc_lexicon());
  const auto cands = extract::generate_candidates(doc);
  const auto it = std::find_if(cands.begin(), cands.end(), [](const CandidatePhrase& c) {
    return c.sentence_index == 0 && c.start_position == 1 && c.length() == 2;
  });
  ASSERT_NE(it, cands.end());  // "x z"
  const auto f = extract::compute_features(*it, doc);
  EXPECT_DOUBLE_EQ(f[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(f[1], 1.0);        // every accepted bigram occurs once
  EXPECT_DOUBLE_EQ(f[2], 1.0);        // x occurs twice, the maximum
  EXPECT_DOUBLE_EQ(f[3], 1.0);        // first of two sentences
  EXPECT_DOUBLE_EQ(f[4], 1.0 - 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(f[5], 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(f[6], 1.0 - 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(f[7], 1.0);
}

TEST(Score, Boundaries) {
  FeatureVector ones;
  ones.values.fill(1.0);
  FeatureVector zeros;
  EXPECT_DOUBLE_EQ(extract::score(ones, WeightVector::uniform()), 1.0);
  EXPECT_DOUBLE_EQ(extract::score(ones, WeightVector({0, 3, 0, 0, 1, 0, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(extract::score(zeros, WeightVector::uniform()), 0.0);
  FeatureVector alt;
  alt.values = {1, 0, 1, 0, 1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(extract::score(alt, WeightVector::uniform()), 0.5);
}

TEST(Score, InvalidWeights) {
  EXPECT_THROW(WeightVector({0, 0, 0, 0, 0, 0, 0, 0}), Error);
  EXPECT_THROW(WeightVector({1, -1, 0, 0, 0, 0, 0, 0}), Error);
}

CandidatePhrase phrase(LemmaSeq seq, std::size_t sentence, std::size_t start) {
  CandidatePhrase c;
  for (const auto& l : seq) {
    morph::AnnotatedToken t;
    t.surface = l;
    t.lemma = l;
    c.tokens.push_back(t);
  }
  c.lemma_seq = std::move(seq);
  c.sentence_index = sentence;
  c.start_position = start;
  return c;
}

TEST(SelectKeyphrases, DeduplicatesByLemma) {
  const auto out = extract::select_keyphrases({{phrase({"a"}, 0, 0), 0.3}, {phrase({"a"}, 2, 1), 0.7}}, 10);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_DOUBLE_EQ(out[0].score, 0.7);
  EXPECT_EQ(out[0].first_occurrence, (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(SelectKeyphrases, KLargerThanAvailable) {
  const auto out = extract::select_keyphrases({{phrase({"a"}, 0, 0), 0.3}, {phrase({"b"}, 0, 1), 0.2}}, 50);
  EXPECT_EQ(out.size(), 2u);
}

TEST(SelectKeyphrases, OrderAndTopK) {
  const auto out = extract::select_keyphrases(
      {{phrase({"c"}, 0, 2), 0.1}, {phrase({"a"}, 0, 0), 0.9}, {phrase({"b"}, 0, 1), 0.5}}, 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].lemma_seq, LemmaSeq{"a"});
  EXPECT_EQ(out[1].lemma_seq, LemmaSeq{"b"});
}

TEST(SelectKeyphrases, TieBreaks) {
  const auto out = extract::select_keyphrases(
      {{phrase({"z"}, 1, 0), 0.5}, {phrase({"y"}, 0, 3), 0.5}, {phrase({"b"}, 0, 3), 0.5}}, 10);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].lemma_seq, LemmaSeq{"b"});
  EXPECT_EQ(out[1].lemma_seq, LemmaSeq{"y"});
  EXPECT_EQ(out[2].lemma_seq, LemmaSeq{"z"});
}

TEST(SelectKeyphrases, Threshold) {
  const auto out = extract::select_keyphrases({{phrase({"a"}, 0, 0), 0.9}, {phrase({"b"}, 0, 1), 0.2}}, 10, 0.5);
  ASSERT_EQ(out.size(), 1u);
}

TEST(ExtractKeyphrases, ExampleColumns) {
  const auto lex = morph::parse_lexicon(kExampleLexicon, "t1").lexicon;
  extract::ExtractorConfig cfg;
  const auto a = extract::extract_keyphrases("المعاهد العالية بالقرى", lex, cfg);
  const auto b = extract::extract_keyphrases("الأبراج العالية بالقرى", lex, cfg);
  EXPECT_EQ(lemma_set(a), (std::set<LemmaSeq>{{"معهد"}, {"معهد", "عالي"}, {"معهد", "عالي", "قرية"}, {"قرية"}}));
  EXPECT_EQ(lemma_set(b), (std::set<LemmaSeq>{{"برج"}, {"برج", "عالي"}, {"برج", "عالي", "قرية"}, {"قرية"}}));
}

TEST(ExtractKeyphrases, EmptyDocument) {
  EXPECT_TRUE(extract::extract_keyphrases("", abc_lexicon(), {}).empty());
}

TEST(ExtractKeyphrases, KZeroRejected) {
  extract::ExtractorConfig cfg;
  cfg.k = 0;
  EXPECT_THROW(extract::extract_keyphrases("x", abc_lexicon(), cfg), Error);
}

class FuzzedDocs : public ::testing::Test {
 protected:
  void SetUp() override {
    vocab_ = testkit::make_vocabulary("", 12, 5, 4, 3);
    lexicon_ = vocab_.lexicon();
    // unknown words and extra tags so every filter branch is exercised
    lexicon_.insert("pron", {"pron", PosTag::Pronoun});
    lexicon_.insert("num", {"num", PosTag::Number});
    lexicon_.insert("place", {"place", PosTag::PlaceNoun});
    lexicon_.insert("defn", {"defn", PosTag::DefinedNoun});
  }

  std::string doc(std::mt19937& rng) {
    static const std::vector<std::string> extras = {"pron", "num", "place", "defn", "unknownword", "and"};
    std::string s;
    std::uniform_int_distribution<int> n(1, 8);
    for (int i = n(rng); i > 0; --i) {
      auto sentence = testkit::random_sentence(vocab_, rng, 0.2);
      if (std::bernoulli_distribution(0.5)(rng)) {
        sentence.insert(0, extras[std::uniform_int_distribution<std::size_t>(0, extras.size() - 1)(rng)] + " ");
      }
      s += sentence + " ";
    }
    return s;
  }

  testkit::Vocabulary vocab_;
  morph::Lexicon lexicon_;
};

TEST_F(FuzzedDocs, FilterNeverAcceptsNonNounStart) {
  std::mt19937 rng(101);
  const std::set<PosTag> forbidden = {PosTag::Adjective, PosTag::Preposition, PosTag::Verb, PosTag::Particle,
                                      PosTag::Pronoun,   PosTag::Number,      PosTag::Unknown};
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = annotate(doc(rng), lexicon_);
    for (const auto& c : extract::generate_candidates(d)) {
      if (extract::filter_syntactic(c)) EXPECT_FALSE(forbidden.contains(c.tokens.front().pos));
    }
  }
}

TEST_F(FuzzedDocs, FeaturesBounded) {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    for (const auto& [c, f] : extract::featurize(annotate(doc(rng), lexicon_))) {
      for (double v : f.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST_F(FuzzedDocs, KeyphrasesStayInOneSentence) {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    for (const auto& [c, f] : extract::featurize(annotate(doc(rng), lexicon_))) {
      for (const auto& t : c.tokens) EXPECT_EQ(t.sentence_index, c.sentence_index);
    }
  }
}

TEST_F(FuzzedDocs, WeightScalingLeavesSelectionUnchanged) {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto text = doc(rng);
    std::array<double, 8> base{};
    for (auto& v : base) v = w(rng);
    base[0] += 0.01;
    // power-of-two scaling is exact in floating point
    auto scaled = base;
    for (auto& v : scaled) v *= 4.0;
    extract::ExtractorConfig a;
    a.weights = WeightVector(base);
    a.k = 5;
    auto b = a;
    b.weights = WeightVector(scaled);
    const auto ka = extract::extract_keyphrases(text, lexicon_, a);
    const auto kb = extract::extract_keyphrases(text, lexicon_, b);
    ASSERT_EQ(ka.size(), kb.size());
    for (std::size_t i = 0; i < ka.size(); ++i) {
      EXPECT_EQ(ka[i].lemma_seq, kb[i].lemma_seq);
      EXPECT_NEAR(ka[i].score, kb[i].score, 1e-12);
    }
    // arbitrary positive factor: same scores up to rounding
    auto c = a;
    auto odd = base;
    for (auto& v : odd) v *= 3.7;
    c.weights = WeightVector(odd);
    const auto kc = extract::extract_keyphrases(text, lexicon_, c);
    ASSERT_EQ(ka.size(), kc.size());
    for (std::size_t i = 0; i < ka.size(); ++i) EXPECT_NEAR(ka[i].score, kc[i].score, 1e-12);
  }
}

TEST_F(FuzzedDocs, RepeatedRunsIdentical) {
  std::mt19937 rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    const auto text = doc(rng);
    const auto a = extract::extract_keyphrases(text, lexicon_, {});
    const auto b = extract::extract_keyphrases(text, lexicon_, {});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].lemma_seq, b[i].lemma_seq);
      EXPECT_EQ(a[i].score, b[i].score);
      EXPECT_EQ(a[i].surface_example, b[i].surface_example);
    }
  }
}

}  // namespace

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kpeval/error.hpp"
#include "kpeval/train.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace kpeval;
using extract::LabeledSample;
using extract::LogisticModel;

// Gold samples have feature 2 (index 1) set, others clear; the rest is noise.
std::vector<LabeledSample> separable_fixture(unsigned seed, std::size_t n) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<LabeledSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    LabeledSample s;
    s.label = i % 2 == 0 ? 1 : 0;
    for (auto& v : s.features.values) v = u(rng);
    s.features[1] = s.label ? 1.0 : 0.0;
    out.push_back(s);
  }
  return out;
}

// Scalar re-derivation of the loss, written without the library helpers.
double oracle_loss(const std::array<double, 9>& params, const std::vector<LabeledSample>& samples) {
  double total = 0.0;
  for (const auto& s : samples) {
    double z = params[8];
    for (int i = 0; i < 8; ++i) z += params[i] * s.features[i];
    const double p = 1.0 / (1.0 + std::exp(-z));
    total += s.label ? -std::log(p) : -std::log(1.0 - p);
  }
  return total / samples.size();
}

TEST(Train, LossMatchesOracle) {
  const auto samples = separable_fixture(1, 40);
  const auto m = LogisticModel::initial();
  std::array<double, 9> params{};
  for (int i = 0; i < 8; ++i) params[i] = m.weights[i];
  EXPECT_NEAR(extract::logistic_loss(m, samples), oracle_loss(params, samples), 1e-12);
}

TEST(Train, GradientMatchesCentralDifferences) {
  const auto samples = separable_fixture(2, 60);
  const auto m = LogisticModel::initial();
  const auto grad = extract::logistic_gradient(m, samples);
  std::array<double, 9> params{};
  for (int i = 0; i < 8; ++i) params[i] = m.weights[i];
  const double h = 1e-5;
  for (int i = 0; i < 9; ++i) {
    auto plus = params;
    auto minus = params;
    plus[i] += h;
    minus[i] -= h;
    const double fd = (oracle_loss(plus, samples) - oracle_loss(minus, samples)) / (2 * h);
    EXPECT_LE(std::abs(fd - grad[i]), 1e-6 * std::max(1.0, std::abs(fd))) << "param " << i;
  }
}

TEST(Train, LossNonIncreasing) {
  const auto r = extract::train_logistic(separable_fixture(3, 80), 50, 0.01);
  ASSERT_EQ(r.loss_history.size(), 51u);
  for (std::size_t i = 1; i < r.loss_history.size(); ++i) EXPECT_LE(r.loss_history[i], r.loss_history[i - 1]);
}

TEST(Train, InformativeFeatureWins) {
  const auto r = extract::train_logistic(separable_fixture(4, 80), 50, 0.01);
  const auto& w = r.weights.values();
  const auto best = std::max_element(w.begin(), w.end()) - w.begin();
  EXPECT_EQ(best, 1);
  double sum = 0;
  for (double v : w) {
    EXPECT_GE(v, 0.0);
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Train, MatchesScalarGradientDescentOracle) {
  const auto samples = separable_fixture(5, 30);
  const int epochs = 25;
  const double lr = 0.05;
  std::array<double, 9> p{};
  for (int i = 0; i < 8; ++i) p[i] = 1.0 / 8;
  for (int e = 0; e < epochs; ++e) {
    std::array<double, 9> g{};
    for (const auto& s : samples) {
      double z = p[8];
      for (int i = 0; i < 8; ++i) z += p[i] * s.features[i];
      const double err = 1.0 / (1.0 + std::exp(-z)) - s.label;
      for (int i = 0; i < 8; ++i) g[i] += err * s.features[i] / samples.size();
      g[8] += err / samples.size();
    }
    for (int i = 0; i < 9; ++i) p[i] -= lr * g[i];
  }
  const auto r = extract::train_logistic(samples, epochs, lr);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(r.model.weights[i], p[i], 1e-12);
  EXPECT_NEAR(r.model.bias, p[8], 1e-12);
}

TEST(Train, ZeroEpochsIsUniform) {
  const auto r = extract::train_logistic(separable_fixture(6, 10), 0, 0.1);
  for (double v : r.weights.values()) EXPECT_DOUBLE_EQ(v, 1.0 / 8);
}

TEST(Train, SingleLabelIsDegenerate) {
  auto samples = separable_fixture(7, 10);
  for (auto& s : samples) s.label = 0;
  const auto r = extract::train_logistic(samples, 10, 0.1);
  EXPECT_TRUE(r.degenerate);
  EXPECT_FALSE(r.warnings.empty());
  for (double v : r.weights.values()) EXPECT_DOUBLE_EQ(v, 1.0 / 8);
}

TEST(Train, EmptyInputs) {
  EXPECT_THROW(extract::train_logistic({}, 10, 0.1), Error);
  const auto vocab = testkit::make_vocabulary("", 3, 1, 1, 1);
  const auto lex = vocab.lexicon();
  EXPECT_THROW(extract::build_samples({}, morph::LexiconAnalyzer(lex), {}), Error);
  EXPECT_THROW(extract::build_samples({{"noun0", {}}}, morph::LexiconAnalyzer(lex), {}), Error);
}

TEST(Train, FromDocuments) {
  const auto vocab = testkit::make_vocabulary("", 10, 4, 3, 2);
  const auto lex = vocab.lexicon();
  std::mt19937 rng(9);
  std::vector<extract::TrainingDocument> docs;
  for (int d = 0; d < 5; ++d) {
    extract::TrainingDocument doc;
    doc.text = testkit::join_sentences(testkit::random_sentences(vocab, rng, 6));
    doc.gold = {{"noun0"}, {"noun1"}, {"noun2"}};
    docs.push_back(doc);
  }
  const auto samples = extract::build_samples(docs, morph::LexiconAnalyzer(lex), {});
  EXPECT_FALSE(samples.empty());
  const auto r = extract::train_weights(docs, morph::LexiconAnalyzer(lex), {}, 30, 0.1);
  EXPECT_FALSE(r.degenerate);
  double sum = 0;
  for (double v : r.weights.values()) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

}  // namespace

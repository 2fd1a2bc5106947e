#include "kpeval/train.hpp"

#include <algorithm>
#include <cmath>

#include "kpeval/error.hpp"

namespace kpeval::extract {

namespace {

double linear(const LogisticModel& m, const FeatureVector& f) {
  double z = m.bias;
  for (std::size_t i = 0; i < kNumFeatures; ++i) z += m.weights[i] * f[i];
  return z;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

LogisticModel LogisticModel::initial() {
  LogisticModel m;
  m.weights.fill(1.0 / kNumFeatures);
  return m;
}

double logistic_loss(const LogisticModel& model, const std::vector<LabeledSample>& samples) {
  if (samples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : samples) {
    const double z = linear(model, s.features);
    // -[y log p + (1-y) log(1-p)] == softplus(z) - y z
    total += softplus(z) - (s.label ? z : 0.0);
  }
  return total / static_cast<double>(samples.size());
}

std::array<double, kNumFeatures + 1> logistic_gradient(const LogisticModel& model,
                                                       const std::vector<LabeledSample>& samples) {
  std::array<double, kNumFeatures + 1> grad{};
  if (samples.empty()) return grad;
  for (const auto& s : samples) {
    const double err = sigmoid(linear(model, s.features)) - (s.label ? 1.0 : 0.0);
    for (std::size_t i = 0; i < kNumFeatures; ++i) grad[i] += err * s.features[i];
    grad[kNumFeatures] += err;
  }
  for (auto& g : grad) g /= static_cast<double>(samples.size());
  return grad;
}

TrainingResult train_logistic(const std::vector<LabeledSample>& samples, int epochs,
                              double learning_rate) {
  if (samples.empty()) throw Error("training set has no candidate phrases");
  if (epochs < 0) throw Error("epochs must be non-negative");
  if (!(learning_rate > 0.0)) throw Error("learning rate must be positive");

  TrainingResult result{WeightVector::uniform(), LogisticModel::initial(), {}, false, {}};

  std::size_t positives = 0;
  for (const auto& s : samples) positives += s.label ? 1 : 0;
  if (positives == 0 || positives == samples.size()) {
    result.degenerate = true;
    result.warnings.push_back("all training candidates share one label; using uniform weights");
    return result;
  }

  auto& model = result.model;
  result.loss_history.push_back(logistic_loss(model, samples));
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto grad = logistic_gradient(model, samples);
    for (std::size_t i = 0; i < kNumFeatures; ++i) model.weights[i] -= learning_rate * grad[i];
    model.bias -= learning_rate * grad[kNumFeatures];
    result.loss_history.push_back(logistic_loss(model, samples));
  }

  std::array<double, kNumFeatures> clamped{};
  double total = 0.0;
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    clamped[i] = std::max(0.0, model.weights[i]);
    total += clamped[i];
  }
  if (total > 0.0) {
    for (auto& w : clamped) w /= total;
    result.weights = WeightVector(clamped);
  } else {
    result.warnings.push_back("all trained weights are non-positive; using uniform weights");
  }
  return result;
}

std::vector<LabeledSample> build_samples(const std::vector<TrainingDocument>& docs,
                                         const morph::Analyzer& analyzer,
                                         const text::NormalizationConfig& cfg) {
  if (docs.empty()) throw Error("training set is empty");
  std::vector<LabeledSample> samples;
  for (const auto& d : docs) {
    if (d.gold.empty()) throw Error("training document has an empty gold keyphrase set");
    for (const auto& [c, f] : featurize(analyze_text(d.text, analyzer, cfg))) {
      samples.push_back(LabeledSample{f, d.gold.contains(c.lemma_seq) ? 1 : 0});
    }
  }
  return samples;
}

TrainingResult train_weights(const std::vector<TrainingDocument>& docs, const morph::Analyzer& analyzer,
                             const text::NormalizationConfig& cfg, int epochs, double learning_rate) {
  return train_logistic(build_samples(docs, analyzer, cfg), epochs, learning_rate);
}

}  // namespace kpeval::extract

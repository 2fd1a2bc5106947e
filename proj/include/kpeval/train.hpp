#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "kpeval/kp_extract.hpp"

namespace kpeval::extract {

/// One accepted candidate with its binary label (1 = gold keyphrase).
struct LabeledSample {
  FeatureVector features;
  int label = 0;
};

/// Logistic model: p = sigmoid(bias + sum_i w_i * f_i).
struct LogisticModel {
  std::array<double, kNumFeatures> weights{};
  double bias = 0.0;

  /// Uniform 1/8 weights, zero bias.
  static LogisticModel initial();
};

/// Mean negative log-likelihood.
double logistic_loss(const LogisticModel& model, const std::vector<LabeledSample>& samples);

/// Gradient of logistic_loss: entries 0..7 are the weights, entry 8 the bias.
std::array<double, kNumFeatures + 1> logistic_gradient(const LogisticModel& model,
                                                       const std::vector<LabeledSample>& samples);

struct TrainingResult {
  WeightVector weights;
  LogisticModel model;
  /// loss_history[0] is the loss before the first epoch.
  std::vector<double> loss_history;
  bool degenerate = false;
  std::vector<std::string> warnings;
};

/// Batch gradient descent on the feature-level samples. The returned
/// WeightVector is the trained weights clamped at 0 and normalized to sum 1.
TrainingResult train_logistic(const std::vector<LabeledSample>& samples, int epochs,
                              double learning_rate);

struct TrainingDocument {
  std::string text;
  std::set<LemmaSeq> gold;
};

/// Labels every accepted candidate of every document by membership of its
/// lemma sequence in the gold set.
std::vector<LabeledSample> build_samples(const std::vector<TrainingDocument>& docs,
                                         const morph::Analyzer& analyzer,
                                         const text::NormalizationConfig& cfg);

TrainingResult train_weights(const std::vector<TrainingDocument>& docs, const morph::Analyzer& analyzer,
                             const text::NormalizationConfig& cfg, int epochs, double learning_rate);

}  // namespace kpeval::extract

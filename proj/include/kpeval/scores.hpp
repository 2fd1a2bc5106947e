#pragma once

namespace kpeval {

/// Precision / recall / F for one peer against a reference set.
struct ScoreTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;

  bool operator==(const ScoreTriple&) const = default;
};

/// Harmonic mean of precision and recall; 0 when both are 0.
inline double harmonic_f(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

inline ScoreTriple make_triple(double precision, double recall) {
  return ScoreTriple{precision, recall, harmonic_f(precision, recall)};
}

}  // namespace kpeval

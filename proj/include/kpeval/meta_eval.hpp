#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kpeval::meta {

/// Per-system scores for several metrics, aligned with `systems`.
class MetricTable {
 public:
  /// Throws if ids repeat or fewer than two systems are given.
  explicit MetricTable(std::vector<std::string> systems);

  /// Throws if the vector length differs from the number of systems.
  void add_metric(const std::string& name, std::vector<double> scores);

  const std::vector<std::string>& systems() const { return systems_; }
  const std::map<std::string, std::vector<double>>& scores() const { return scores_; }
  bool has_metric(const std::string& name) const { return scores_.contains(name); }
  const std::vector<double>& metric(const std::string& name) const;

 private:
  std::vector<std::string> systems_;
  std::map<std::string, std::vector<double>> scores_;
};

struct Correlation {
  double pearson = 0.0;
  double spearman = 0.0;
};

struct CorrelationReport {
  std::string anchor;
  /// (anchor, other) -> coefficients, for every other metric.
  std::map<std::pair<std::string, std::string>, Correlation> pairs;
  /// Systems ordered best first under each metric.
  std::map<std::string, std::vector<std::string>> rankings;
};

/// Sample Pearson r, clamped to [-1, 1]. Throws UndefinedCorrelation on zero
/// variance and kpeval::Error on length mismatch or fewer than two points.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson over fractional ranks (ties share their average rank).
double spearman(std::span<const double> x, std::span<const double> y);

/// 1-based ranks in ascending order of value; ties get the mean of their ranks.
std::vector<double> fractional_ranks(std::span<const double> values);

/// Systems by descending score, ties broken by system id.
std::vector<std::string> rank_systems(const std::vector<std::string>& systems, std::span<const double> scores);

CorrelationReport correlate_metrics(const MetricTable& table, const std::string& anchor);

}  // namespace kpeval::meta

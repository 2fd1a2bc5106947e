#include "kpeval/meta_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "kpeval/error.hpp"

namespace kpeval::meta {

MetricTable::MetricTable(std::vector<std::string> systems) : systems_(std::move(systems)) {
  if (systems_.size() < 2) throw Error("a metric table needs at least two systems");
  std::set<std::string> seen;
  for (const auto& s : systems_) {
    if (!seen.insert(s).second) throw Error(fmt::format("duplicate system id '{}'", s));
  }
}

void MetricTable::add_metric(const std::string& name, std::vector<double> scores) {
  if (scores.size() != systems_.size()) {
    throw Error(fmt::format("metric '{}' has {} scores for {} systems", name, scores.size(), systems_.size()));
  }
  scores_[name] = std::move(scores);
}

const std::vector<double>& MetricTable::metric(const std::string& name) const {
  const auto it = scores_.find(name);
  if (it == scores_.end()) throw Error(fmt::format("unknown metric '{}'", name));
  return it->second;
}

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("correlation inputs differ in length");
  if (x.size() < 2) throw Error("correlation needs at least two points");
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("correlation undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

std::vector<std::string> rank_systems(const std::vector<std::string>& systems, std::span<const double> scores) {
  if (systems.size() != scores.size()) throw Error("ranking inputs differ in length");
  std::vector<std::size_t> order(systems.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return systems[a] < systems[b];
  });
  std::vector<std::string> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(systems[i]);
  return out;
}

CorrelationReport correlate_metrics(const MetricTable& table, const std::string& anchor) {
  const auto& anchor_scores = table.metric(anchor);
  CorrelationReport report;
  report.anchor = anchor;
  for (const auto& [name, scores] : table.scores()) {
    report.rankings[name] = rank_systems(table.systems(), scores);
    if (name == anchor) continue;
    report.pairs[{anchor, name}] = Correlation{pearson(anchor_scores, scores), spearman(anchor_scores, scores)};
  }
  return report;
}

}  // namespace kpeval::meta

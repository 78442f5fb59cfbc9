#include "fsa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace fsa {

double pcd(const std::vector<int>& selected, const std::vector<int>& truth) {
  if (truth.empty()) throw MetricError("pcd needs a nonempty truth set");
  std::set<int> sel(selected.begin(), selected.end());
  long hit = 0;
  for (int t : truth) hit += sel.count(t);
  return 100.0 * static_cast<double>(hit) / static_cast<double>(truth.size());
}

double detection_rate(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& runs) {
  if (runs.empty()) throw MetricError("detection_rate needs at least one run");
  long exact = 0;
  for (const auto& [selected, truth] : runs) {
    std::set<int> a(selected.begin(), selected.end());
    std::set<int> b(truth.begin(), truth.end());
    exact += (a == b);
  }
  return 100.0 * static_cast<double>(exact) / static_cast<double>(runs.size());
}

double auc(const Vector& scores, const Vector& labels) {
  const long n = scores.size();
  if (labels.size() != n) throw MetricError("auc: scores and labels differ in length");
  long n_pos = 0, n_neg = 0;
  for (long i = 0; i < n; ++i) {
    if (labels[i] == 1.0)
      ++n_pos;
    else if (labels[i] == -1.0)
      ++n_neg;
    else
      throw MetricError("auc: labels must be +-1");
  }
  if (n_pos == 0 || n_neg == 0) throw MetricError("auc undefined with a single class");

  // average ranks over tied scores, then the Mann-Whitney rank sum
  std::vector<long> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](long a, long b) { return scores[a] < scores[b]; });
  std::vector<double> rank(n);
  long i = 0;
  while (i < n) {
    long j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // ranks are 1-based
    for (long t = i; t <= j; ++t) rank[order[t]] = avg;
    i = j + 1;
  }
  double pos_rank_sum = 0.0;
  for (long t = 0; t < n; ++t)
    if (labels[t] == 1.0) pos_rank_sum += rank[t];
  double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double rmse(const Vector& pred, const Vector& y) {
  if (pred.size() != y.size() || pred.size() == 0)
    throw MetricError("rmse needs two equal-length nonempty vectors");
  return std::sqrt((pred - y).squaredNorm() / static_cast<double>(pred.size()));
}

double misclassification_error(const Vector& scores, const Vector& labels) {
  const long n = scores.size();
  if (labels.size() != n || n == 0)
    throw MetricError("misclassification_error needs equal-length nonempty vectors");
  long wrong = 0;
  for (long i = 0; i < n; ++i) {
    double pred = scores[i] >= 0 ? 1.0 : -1.0;
    wrong += pred != labels[i];
  }
  return static_cast<double>(wrong) / static_cast<double>(n);
}

double rank_disagreement(const Vector& scores, const RankPairSet& pairs) {
  double mass = 0.0;
  for (const RankPair& p : pairs.pairs)
    if (p.r > 0) mass += p.r;
  if (mass <= 0) throw MetricError("rank_disagreement needs pairs with positive preference");
  double bad = 0.0;
  for (const RankPair& p : pairs.pairs) {
    if (p.r <= 0) continue;
    if (p.i >= scores.size() || p.j >= scores.size())
      throw MetricError("rank pair index beyond the score vector");
    if (scores[p.i] <= scores[p.j]) bad += p.r;
  }
  return bad / mass;
}

}  // namespace fsa

#pragma once

#include "fsa/types.hpp"

namespace fsa {

/// Percent of true columns present in the selection.
double pcd(const std::vector<int>& selected, const std::vector<int>& truth);

/// Percent of runs whose selection equals the truth exactly.
double detection_rate(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& runs);

/// Probability a random positive outranks a random negative (rank-sum
/// estimator, ties counted 1/2). Throws MetricError when only one class is
/// present. Invariant under strictly increasing score transforms.
double auc(const Vector& scores, const Vector& labels);

double rmse(const Vector& pred, const Vector& y);

/// Fraction of rows where sign(score) disagrees with the label (score 0
/// predicts +1).
double misclassification_error(const Vector& scores, const Vector& labels);

/// Preference-weighted fraction of wrongly ordered pairs: each pair with
/// r_ij > 0 carries mass r_ij (normalized over such pairs) and counts as a
/// violation when scores[i] <= scores[j]; tied scores on a strict preference
/// therefore count as violations.
double rank_disagreement(const Vector& scores, const RankPairSet& pairs);

}  // namespace fsa

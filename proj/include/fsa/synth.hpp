#pragma once

#include "fsa/types.hpp"

namespace fsa {

/// Synthetic benchmark family: rows drawn from N(0, S) with S_ij =
/// delta^|i-j|, signal carried by columns 10, 20, ..., 10*k_star in 1-based
/// numbering (9, 19, ... 0-based; true_columns() reports the 0-based ids).
struct SynthConfig {
  long N = 100;
  long M = 10;
  int k_star = 1;
  double delta = 0.9;
  double noise_fraction = 0.0;  // classification: fraction relabeled at random
  double sigma = 1.0;           // regression noise scale
  std::uint64_t seed = 0;

  void validate() const;  // requires 10*k_star <= M, 0 <= delta < 1
  std::vector<int> true_columns() const;
};

/// N x M design with the banded-correlation covariance, built row-wise by
/// the first-order recurrence x_0 ~ N(0,1), x_j = delta*x_{j-1} +
/// sqrt(1-delta^2)*z_j (exact for this covariance, O(NM)). Rows use seeds
/// derived from (seed, row), so output is independent of generation order.
Matrix gen_design(const SynthConfig& cfg);

/// Labels +1 iff the true-column sum is positive, else -1. When
/// noise_fraction > 0, that fraction of rows (chosen uniformly, seeded) gets
/// fresh uniform +-1 labels, so about half of them end up wrong.
Dataset gen_classification(const SynthConfig& cfg);

/// y = sum of true columns + sigma * standard normal noise.
Dataset gen_regression(const SynthConfig& cfg);

/// Features as gen_design plus n_pairs sampled unordered row pairs, emitted
/// in both orientations with r_ij = 1 if the true score of i exceeds j's,
/// 0.5 on ties, 0 otherwise (so r_ij + r_ji = 1).
Dataset gen_rank_pairs(const SynthConfig& cfg, int n_pairs);

}  // namespace fsa

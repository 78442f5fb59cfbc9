#pragma once

#include <vector>

namespace fsa {

/// Annealing schedule: how many feature groups survive each iteration.
/// The real-valued curve is M_e = k + (M-k) * max(0, (n_iter - 2e) / (2*e*mu + n_iter));
/// we round half-up, clamp to [k, M] and force the sequence nonincreasing.
/// It reaches k at e = n_iter/2 and stays there, leaving the second half of
/// the iterations to refine the final support. Larger mu decays faster.
struct Schedule {
  int M = 1;
  int k = 1;
  double mu = 0.0;
  int n_iter = 1;
  std::vector<int> seq;  // precomputed; seq[e-1] = M_e

  Schedule(int M, int k, double mu, int n_iter);
};

/// M_e for 1-based iteration index e.
int features_to_keep(int e, const Schedule& s);

/// Total coefficient touches sum_e M_e; the trainer's per-iteration work is
/// proportional to this, which is what makes aggressive schedules cheap.
long long schedule_cost(const Schedule& s);

}  // namespace fsa

#include "fsa/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "fsa/types.hpp"

namespace fsa {

Schedule::Schedule(int M_, int k_, double mu_, int n_iter_)
    : M(M_), k(k_), mu(mu_), n_iter(n_iter_) {
  if (M < 1) throw ContractError("schedule needs M >= 1");
  if (k < 1 || k > M) throw ContractError("schedule needs 1 <= k <= M");
  if (!(mu >= 0)) throw ContractError("schedule needs mu >= 0");
  if (n_iter < 1) throw ContractError("schedule needs n_iter >= 1");
  seq.resize(n_iter);
  int prev = M;
  for (int e = 1; e <= n_iter; ++e) {
    double frac = static_cast<double>(n_iter - 2 * e) / (2.0 * e * mu + n_iter);
    if (frac < 0) frac = 0;
    double raw = k + (M - k) * frac;
    int m_e = static_cast<int>(std::floor(raw + 0.5));  // round half up
    m_e = std::clamp(m_e, k, M);
    m_e = std::min(m_e, prev);  // never grows
    seq[e - 1] = m_e;
    prev = m_e;
  }
}

int features_to_keep(int e, const Schedule& s) {
  if (e < 1 || e > s.n_iter) throw ContractError("iteration index outside [1, n_iter]");
  return s.seq[e - 1];
}

long long schedule_cost(const Schedule& s) {
  long long total = 0;
  for (int m_e : s.seq) total += m_e;
  return total;
}

}  // namespace fsa

#pragma once

#include <functional>
#include <random>

#include "fsa/losses.hpp"
#include "fsa/types.hpp"

namespace testutil {

inline fsa::Matrix random_matrix(long n, long m, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  fsa::Matrix X(n, m);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < m; ++j) X(i, j) = g(rng);
  return X;
}

inline fsa::Vector random_vector(long n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  fsa::Vector v(n);
  for (long i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline fsa::Dataset random_dataset(fsa::Task task, long n, long m, std::uint64_t seed) {
  fsa::Dataset d;
  d.task = task;
  d.X = random_matrix(n, m, seed);
  std::mt19937_64 rng(seed ^ 0xabcdef);
  if (task == fsa::Task::ranking) {
    std::normal_distribution<double> g;
    int want = static_cast<int>(2 * n);
    while (static_cast<int>(d.pairs.pairs.size()) < want) {
      int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
      if (i == j) continue;
      bool dup = false;
      for (const auto& p : d.pairs.pairs) dup |= (p.i == i && p.j == j);
      if (dup) continue;
      double r = (rng() % 3) * 0.5;  // 0, 0.5 or 1
      d.pairs.pairs.push_back({i, j, r});
    }
  } else if (task == fsa::Task::classification) {
    d.y.resize(n);
    for (long i = 0; i < n; ++i) d.y[i] = (rng() & 1) ? 1.0 : -1.0;
  } else {
    d.y = random_vector(n, seed ^ 0x1234);
  }
  return d;
}

// central finite differences of a scalar function of a parameter vector
inline fsa::Vector fd_gradient(const std::function<double(const fsa::Vector&)>& f,
                               const fsa::Vector& theta, double h = 1e-6) {
  fsa::Vector g(theta.size());
  fsa::Vector t = theta;
  for (long i = 0; i < theta.size(); ++i) {
    double step = h * std::max(1.0, std::abs(theta[i]));
    t[i] = theta[i] + step;
    double up = f(t);
    t[i] = theta[i] - step;
    double down = f(t);
    t[i] = theta[i];
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

inline bool exact_eq(const fsa::Vector& a, const fsa::Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

inline bool exact_eq(const fsa::Matrix& a, const fsa::Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

inline double max_rel_err(const fsa::Vector& got, const fsa::Vector& want) {
  double worst = 0.0;
  for (long i = 0; i < got.size(); ++i) {
    double denom = std::max({std::abs(got[i]), std::abs(want[i]), 1e-8});
    worst = std::max(worst, std::abs(got[i] - want[i]) / denom);
  }
  return worst;
}

// finite-difference comparison: the per-component denominator is floored at a
// fraction of the gradient scale, because components far below the vector
// norm are cancellation noise in central differences, not signal
inline double fd_rel_err(const fsa::Vector& got, const fsa::Vector& want) {
  double scale = std::max(1e-8, 1e-3 * want.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (long i = 0; i < got.size(); ++i) {
    double denom = std::max({std::abs(got[i]), std::abs(want[i]), scale});
    worst = std::max(worst, std::abs(got[i] - want[i]) / denom);
  }
  return worst;
}

}  // namespace testutil

#include "fsa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace fsa {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t row) {
  std::uint64_t h = splitmix64(seed ^ 0x8e9b7d4a5c3f2e1dULL);
  h = splitmix64(h ^ stream);
  return splitmix64(h ^ row);
}

// normal draws decoupled from the library distribution (stable across stdlibs)
class Gauss {
 public:
  explicit Gauss(std::uint64_t seed) : rng_(seed) {}

  double uniform01() {  // in (0,1)
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = uniform01(), v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    double ang = 2.0 * M_PI * v;
    spare_ = r * std::sin(ang);
    has_spare_ = true;
    return r * std::cos(ang);
  }

  std::uint64_t bits() { return rng_(); }

 private:
  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

constexpr std::uint64_t kStreamDesign = 0;
constexpr std::uint64_t kStreamTarget = 1;
constexpr std::uint64_t kStreamNoise = 2;
constexpr std::uint64_t kStreamPairs = 3;

Vector true_scores(const Matrix& X, const SynthConfig& cfg) {
  Vector s = Vector::Zero(X.rows());
  for (int c : cfg.true_columns()) s += X.col(c);
  return s;
}

}  // namespace

void SynthConfig::validate() const {
  if (N < 1 || M < 1) throw ContractError("N and M must be positive");
  if (k_star < 1) throw ContractError("k_star must be positive");
  if (10L * k_star > M)
    throw ContractError("true columns 10..10*k_star need M >= " + std::to_string(10L * k_star));
  if (!(delta >= 0 && delta < 1)) throw ContractError("delta must lie in [0, 1)");
  if (!(noise_fraction >= 0 && noise_fraction <= 1))
    throw ContractError("noise_fraction must lie in [0, 1]");
  if (!(sigma >= 0)) throw ContractError("sigma must be nonnegative");
}

std::vector<int> SynthConfig::true_columns() const {
  std::vector<int> cols(k_star);
  for (int t = 0; t < k_star; ++t) cols[t] = 10 * (t + 1) - 1;
  return cols;
}

Matrix gen_design(const SynthConfig& cfg) {
  cfg.validate();
  Matrix X(cfg.N, cfg.M);
  const double carry = cfg.delta;
  const double fresh = std::sqrt(1.0 - cfg.delta * cfg.delta);
  for (long i = 0; i < cfg.N; ++i) {
    Gauss g(mix(cfg.seed, kStreamDesign, static_cast<std::uint64_t>(i)));
    double prev = g();
    X(i, 0) = prev;
    for (long j = 1; j < cfg.M; ++j) {
      prev = carry * prev + fresh * g();
      X(i, j) = prev;
    }
  }
  return X;
}

Dataset gen_classification(const SynthConfig& cfg) {
  Dataset data;
  data.task = Task::classification;
  data.X = gen_design(cfg);
  Vector s = true_scores(data.X, cfg);
  data.y.resize(cfg.N);
  for (long i = 0; i < cfg.N; ++i) data.y[i] = s[i] > 0 ? 1.0 : -1.0;

  long n_noisy = std::llround(cfg.noise_fraction * static_cast<double>(cfg.N));
  if (n_noisy > 0) {
    Gauss g(mix(cfg.seed, kStreamNoise, 0));
    // partial Fisher-Yates: the first n_noisy slots are a uniform subset
    std::vector<long> rows(cfg.N);
    for (long i = 0; i < cfg.N; ++i) rows[i] = i;
    for (long t = 0; t < n_noisy; ++t) {
      long u = t + static_cast<long>(g.bits() % static_cast<std::uint64_t>(cfg.N - t));
      std::swap(rows[t], rows[u]);
    }
    for (long t = 0; t < n_noisy; ++t) data.y[rows[t]] = (g.bits() & 1) ? 1.0 : -1.0;
  }

  data.feature_names.reserve(cfg.M);
  for (long j = 0; j < cfg.M; ++j) data.feature_names.push_back("x" + std::to_string(j));
  data.target_name = "y";
  data.validate();
  return data;
}

Dataset gen_regression(const SynthConfig& cfg) {
  Dataset data;
  data.task = Task::regression;
  data.X = gen_design(cfg);
  data.y = true_scores(data.X, cfg);
  if (cfg.sigma > 0) {
    for (long i = 0; i < cfg.N; ++i) {
      Gauss g(mix(cfg.seed, kStreamTarget, static_cast<std::uint64_t>(i)));
      data.y[i] += cfg.sigma * g();
    }
  }
  data.feature_names.reserve(cfg.M);
  for (long j = 0; j < cfg.M; ++j) data.feature_names.push_back("x" + std::to_string(j));
  data.target_name = "y";
  data.validate();
  return data;
}

Dataset gen_rank_pairs(const SynthConfig& cfg, int n_pairs) {
  if (n_pairs < 1) throw ContractError("n_pairs must be positive");
  const long max_distinct = cfg.N * (cfg.N - 1) / 2;
  if (n_pairs > max_distinct)
    throw ContractError("n_pairs exceeds the number of distinct row pairs");
  Dataset data;
  data.task = Task::ranking;
  data.X = gen_design(cfg);
  Vector s = true_scores(data.X, cfg);

  Gauss g(mix(cfg.seed, kStreamPairs, 0));
  std::set<std::pair<int, int>> chosen;
  while (static_cast<int>(chosen.size()) < n_pairs) {
    int i = static_cast<int>(g.bits() % static_cast<std::uint64_t>(cfg.N));
    int j = static_cast<int>(g.bits() % static_cast<std::uint64_t>(cfg.N));
    if (i == j) continue;
    chosen.insert({std::min(i, j), std::max(i, j)});
  }
  data.pairs.pairs.reserve(2 * chosen.size());
  for (auto [i, j] : chosen) {
    double r = s[i] > s[j] ? 1.0 : (s[i] < s[j] ? 0.0 : 0.5);
    data.pairs.pairs.push_back({i, j, r});
    data.pairs.pairs.push_back({j, i, 1.0 - r});
  }

  data.feature_names.reserve(cfg.M);
  for (long j = 0; j < cfg.M; ++j) data.feature_names.push_back("x" + std::to_string(j));
  data.validate();
  return data;
}

}  // namespace fsa

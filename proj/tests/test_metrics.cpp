#include <cmath>
#include <random>

#include "doctest.h"
#include "fsa/metrics.hpp"
#include "helpers.hpp"

using namespace fsa;

namespace {

// O(P*N) pairwise AUC, the definition the rank-sum shortcut must reproduce
double brute_auc(const Vector& s, const Vector& y) {
  double num = 0, den = 0;
  for (long i = 0; i < s.size(); ++i)
    for (long j = 0; j < s.size(); ++j) {
      if (y[i] <= 0 || y[j] >= 0) continue;
      den += 1;
      if (s[i] > s[j]) num += 1;
      else if (s[i] == s[j]) num += 0.5;
    }
  return num / den;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("selection accuracy measures") {
  CHECK(pcd({9, 19, 29}, {9, 19, 29}) == 100.0);
  CHECK(pcd({9, 19, 5}, {9, 19, 29}) == doctest::Approx(200.0 / 3));
  CHECK(pcd({1, 2, 3}, {9, 19, 29}) == 0.0);
  CHECK(pcd({29, 9, 19, 4}, {9, 19, 29}) == 100.0);  // order and extras ignored

  std::vector<std::pair<std::vector<int>, std::vector<int>>> runs{
      {{9, 19}, {9, 19}},
      {{9, 20}, {9, 19}},
      {{19, 9}, {9, 19}},  // order-insensitive
      {{9}, {9, 19}},
  };
  CHECK(detection_rate(runs) == 50.0);
}

TEST_CASE("auc hand cases") {
  Vector s(4), y(4);
  s << 0.9, 0.8, 0.3, 0.1;
  y << 1, -1, 1, -1;
  CHECK(auc(s, y) == doctest::Approx(0.75));

  Vector s2(4);
  s2 << 0.5, 0.5, 0.5, 0.5;  // all tied: coin flip
  CHECK(auc(s2, y) == doctest::Approx(0.5));

  Vector s3(4);
  s3 << 2, 1, 0.5, -3;
  Vector y3(4);
  y3 << 1, 1, -1, -1;
  CHECK(auc(s3, y3) == 1.0);
  CHECK(auc(-s3, y3) == 0.0);

  Vector one = Vector::Ones(4);
  CHECK_THROWS_AS(auc(s, one), MetricError);
}

TEST_CASE("auc equals the pairwise definition") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    long n = 50;
    Vector s(n), y(n);
    bool ok = false;
    while (!ok) {
      for (long i = 0; i < n; ++i) {
        s[i] = std::round(g(rng) * 4) / 4;  // heavy ties
        y[i] = (rng() & 1) ? 1.0 : -1.0;
      }
      ok = y.maxCoeff() > 0 && y.minCoeff() < 0;
    }
    CHECK(auc(s, y) == doctest::Approx(brute_auc(s, y)).epsilon(1e-12));
  }
}

TEST_CASE("auc ignores monotone rescaling and hovers at half for noise") {
  std::mt19937_64 rng(62);
  std::normal_distribution<double> g;
  Vector s(2000), y(2000);
  for (long i = 0; i < 2000; ++i) {
    s[i] = g(rng);
    y[i] = (rng() & 1) ? 1.0 : -1.0;
  }
  double base = auc(s, y);
  CHECK(base == doctest::Approx(0.5).epsilon(0.08));
  Vector warped = (s.array() * 3.0).exp();  // strictly increasing map
  CHECK(auc(warped, y) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("rmse and misclassification") {
  Vector p(3), y(3);
  p << 1, 2, 3;
  y << 1, 4, 3;
  CHECK(rmse(p, y) == doctest::Approx(std::sqrt(4.0 / 3.0)));
  CHECK(rmse(y, y) == 0.0);

  Vector s(5), lab(5);
  s << 2.0, -1.0, 0.0, -0.5, 3.0;
  lab << 1, 1, -1, -1, 1;
  // score 0 predicts +1, so row 2 is wrong; row 1 is wrong
  CHECK(misclassification_error(s, lab) == doctest::Approx(0.4));
  CHECK(misclassification_error(lab, lab) == 0.0);
}

TEST_CASE("rank disagreement weighs preferences by strength") {
  Vector s(3);
  s << 3.0, 2.0, 1.0;  // row 0 above row 1 above row 2
  RankPairSet ps;
  ps.pairs.push_back({0, 1, 1.0});   // satisfied
  ps.pairs.push_back({2, 1, 1.0});   // violated
  ps.pairs.push_back({1, 2, 0.5});   // satisfied, half mass
  ps.pairs.push_back({1, 0, 0.0});   // no mass: ignored
  CHECK(rank_disagreement(s, ps) == doctest::Approx(1.0 / 2.5));

  SUBCASE("ties on a strict preference count against") {
    Vector t = Vector::Constant(3, 7.0);
    RankPairSet one;
    one.pairs.push_back({0, 1, 1.0});
    CHECK(rank_disagreement(t, one) == 1.0);
  }

  SUBCASE("invariant under monotone transforms") {
    Vector warped = (s.array() * 0.3).exp();
    CHECK(rank_disagreement(warped, ps) == rank_disagreement(s, ps));
  }

  SUBCASE("all-zero preference mass is an error") {
    RankPairSet zero;
    zero.pairs.push_back({0, 1, 0.0});
    CHECK_THROWS_AS(rank_disagreement(s, zero), MetricError);
  }
}

TEST_CASE("metric input validation") {
  Vector a(3), b(2);
  a << 1, 2, 3;
  b << 1, 2;
  CHECK_THROWS_AS(rmse(a, b), MetricError);
  CHECK_THROWS_AS(misclassification_error(a, b), MetricError);
  CHECK_THROWS_AS(auc(a, b), MetricError);
}

}  // TEST_SUITE

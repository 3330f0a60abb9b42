#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toricgw/classes.hpp"
#include "toricgw/compactification.hpp"

using namespace toricgw;

namespace {

const std::vector<std::string> kAllFans = {"c3",   "c3_bar",   "conifold", "kp2",       "kp2_bar",
                                           "c3z3", "c3z3_bar", "kp112",    "kp112_bar"};

Grading two_vars() { return Grading({{Var::q(1), 1}, {Var::q(2), 2}}); }
Grading fractional_vars() { return Grading({{Var::y(1), 1}, {Var::tau(3), Rational(1, 3)}}); }

}  // namespace

TEST(SeriesProperties, RingAxiomsOnRandomSeries) {
  std::mt19937 rng(20261016);
  int checked = 0;
  for (const auto& g : {two_vars(), fractional_vars()})
    for (int t = 0; t < 60; ++t) {
      auto a = oracle::random_series(rng, g, 6, false);
      auto b = oracle::random_series(rng, g, 6, false);
      auto c = oracle::random_series(rng, g, 6, true);
      ASSERT_TRUE(oracle::ring_axioms_hold(a, b, c)) << a.to_text() << " | " << b.to_text() << " | " << c.to_text();
      ++checked;
    }
  EXPECT_GE(checked, 100);
}

TEST(SeriesProperties, ExpLogRoundTrip) {
  std::mt19937 rng(7);
  int checked = 0;
  for (const auto& g : {two_vars(), fractional_vars()})
    for (int t = 0; t < 60; ++t) {
      auto s = oracle::random_series(rng, g, 6, true);
      ASSERT_TRUE(oracle::exp_log_round_trip(s)) << s.to_text();
      ++checked;
    }
  EXPECT_GE(checked, 100);
}

TEST(SeriesProperties, ExpIsAHomomorphism) {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    auto a = oracle::random_series(rng, two_vars(), 6, true);
    auto b = oracle::random_series(rng, two_vars(), 6, true);
    EXPECT_EQ(exp_series(a + b), exp_series(a) * exp_series(b));
  }
}

TEST(SeriesProperties, PowComposes) {
  std::mt19937 rng(13);
  for (int t = 0; t < 40; ++t) {
    auto s = oracle::random_series(rng, two_vars(), 6, true) + Series::constant(two_vars(), 6, 1);
    auto third = pow_series(s, Rational(1, 3));
    EXPECT_EQ(third * third * third, s);
    EXPECT_EQ(pow_series(s, -1) * s, Series::constant(s, 1));
  }
}

TEST(SeriesProperties, SubstitutionIsARingMap) {
  std::mt19937 rng(17);
  Grading g({{Var::y(1), 1}});
  for (int t = 0; t < 30; ++t) {
    auto a = oracle::random_series(rng, g, 6, false);
    auto b = oracle::random_series(rng, g, 6, false);
    Assignment as{{Var::y(1), oracle::random_series(rng, Grading({{Var::q(1), 1}}), 6, true)}};
    if (as.at(Var::y(1)).valuation().value_or(0) < 1) continue;
    EXPECT_EQ(substitute(a * b, as, 6), substitute(a, as, 6) * substitute(b, as, 6));
    EXPECT_EQ(substitute(a + b, as, 6), substitute(a, as, 6) + substitute(b, as, 6));
  }
}

TEST(BoxProperties, MatchesBruteForceOnAllFans) {
  for (const auto& name : kAllFans) {
    auto fan = load_stacky_fan(oracle::fan_path(name));
    std::set<LatticeVector> got;
    for (const auto& b : box_elements(fan).elements) {
      got.insert(b.vector);
      Rational age = 0;
      for (const auto& [i, c] : b.coefficients) {
        EXPECT_GT(c, 0);
        EXPECT_LT(c, 1);
        age += c;
      }
      EXPECT_EQ(age, b.age);
    }
    EXPECT_EQ(got, oracle::brute_force_box(fan)) << name;
  }
}

TEST(BoxProperties, CyclicQuotientsHaveKMinusOneElements) {
  for (long k = 2; k <= 7; ++k) {
    std::vector<LatticeVector> extras;
    for (long j = 1; j < k; ++j) extras.push_back({1, j});
    auto fan = make_stacky_fan(2, {{1, 0}, {1, k}}, {{0, 1}}, extras);
    auto got = box_elements(fan).elements;
    EXPECT_EQ(static_cast<long>(got.size()), k - 1);
    EXPECT_EQ(std::set<LatticeVector>(oracle::brute_force_box(fan)).size(), static_cast<std::size_t>(k - 1));
  }
}

TEST(EnumeratorProperties, CompleteOnRankTwoKernels) {
  int checked = 0;
  for (const auto& name : kAllFans) {
    auto data = kernel_data(load_stacky_fan(oracle::fan_path(name)));
    if (data.r > 2 || data.r == 0) continue;
    std::set<QVector> got;
    for (const auto& c : enumerate_effective(data, 4)) got.insert(c.pairings);
    EXPECT_EQ(got, oracle::brute_force_keff(data, 4)) << name;
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(EnumeratorProperties, MonotoneInTheBound) {
  auto data = kernel_data(load_stacky_fan(oracle::fan_path("kp112")));
  std::size_t last = 0;
  for (int b = 1; b <= 5; ++b) {
    auto n = enumerate_effective(data, b).size();
    EXPECT_GE(n, last);
    last = n;
  }
}

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "toricgw/classes.hpp"
#include "toricgw/error.hpp"

using namespace toricgw;

namespace {

ToricData load(const std::string& name) { return kernel_data(load_stacky_fan(oracle::fan_path(name))); }

}  // namespace

TEST(Enumerate, MatchesGridWalkOnSmallKernels) {
  for (const auto& [name, bound] : std::vector<std::pair<std::string, Rational>>{
           {"kp2", 5}, {"conifold", 6}, {"c3z3", 4}, {"kp112", 4}}) {
    auto data = load(name);
    ASSERT_LE(data.r, 2);
    std::set<QVector> got;
    for (const auto& c : enumerate_effective(data, bound)) {
      got.insert(c.pairings);
      EXPECT_GT(c.grade, 0);
      EXPECT_LE(c.grade, bound);
      for (const auto& x : c.coords) EXPECT_GE(x, 0);
    }
    EXPECT_EQ(got, oracle::brute_force_keff(data, bound)) << name;
  }
}

TEST(Enumerate, SortedAndInKernel) {
  auto data = load("kp112");
  auto cls = enumerate_effective(data, 3);
  for (std::size_t t = 0; t < cls.size(); ++t) {
    EXPECT_TRUE(data.in_kernel(cls[t].pairings));
    EXPECT_TRUE(is_effective(data, cls[t].pairings));
    if (t > 0) {
      EXPECT_LE(cls[t - 1].grade, cls[t].grade);
    }
  }
  EXPECT_TRUE(enumerate_effective(load("c3"), 10).empty());
}

TEST(Enumerate, KP2Classes) {
  auto cls = enumerate_effective(load("kp2"), 3);
  ASSERT_EQ(cls.size(), 3u);
  EXPECT_EQ(cls[0].pairings, (QVector{-3, 1, 1, 1}));
  EXPECT_EQ(cls[2].pairings, (QVector{-9, 3, 3, 3}));
}

TEST(Sector, TwistedSectorOfFractionalClass) {
  auto data = load("c3z3");
  auto d = make_class(data, {Rational(-1, 3), Rational(-1, 3), Rational(-1, 3), 1});
  EXPECT_EQ(d.sector.vector, (LatticeVector{0, 0, 1}));
  EXPECT_EQ(d.sector.age, 1);
  auto e = make_class(data, {Rational(-2, 3), Rational(-2, 3), Rational(-2, 3), 2});
  EXPECT_EQ(e.sector.vector, (LatticeVector{0, 0, 2}));
  EXPECT_EQ(e.sector.age, 2);
}

TEST(Sector, ZeroExactlyWhenPairingsIntegral) {
  for (const auto& name : {"kp2", "c3z3", "kp112", "conifold"}) {
    auto data = load(name);
    for (const auto& c : enumerate_effective(data, 4)) {
      bool integral = true;
      for (const auto& x : c.pairings) integral = integral && is_integer(x);
      EXPECT_EQ(c.sector.is_zero(), integral) << name;
      // v(d) = sum ceil(D_i.d) b_i
      QVector v(data.n, Rational(0));
      for (int i = 0; i < data.mprime; ++i)
        for (int k = 0; k < data.n; ++k) v[k] += Rational(ceil_q(c.pairings[i])) * static_cast<long>(data.fan.vector(i)[k]);
      EXPECT_EQ(v, to_qvector(c.sector.vector)) << name;
    }
  }
}

TEST(Filters, KP2SmoothFilter) {
  auto data = load("kp2");
  auto cls = enumerate_effective(data, 4);
  EXPECT_EQ(filter_g_smooth(data, cls, 0).size(), 4u);
  for (int j = 1; j < 4; ++j) EXPECT_TRUE(filter_g_smooth(data, cls, j).empty());
  for (const auto& c : cls) EXPECT_EQ(c1_pairing(data, c), 0);
}

TEST(Filters, OrbifoldFilterKeepsFractionalNegativePairings) {
  auto data = load("c3z3");
  auto cls = enumerate_effective(data, Rational(10, 3));
  auto kept = filter_g_orbi(data, cls, 3);
  ASSERT_EQ(kept.size(), 4u);  // k = 1, 4, 7, 10
  EXPECT_EQ(kept[1].pairings, (QVector{Rational(-4, 3), Rational(-4, 3), Rational(-4, 3), 4}));
}

TEST(Filters, TrivialFansHaveNothing) {
  auto data = load("conifold");
  auto cls = enumerate_effective(data, 10);
  for (int j = 0; j < data.mprime; ++j) EXPECT_TRUE(filter_g_smooth(data, cls, j).empty());
}

TEST(Classes, MakeClassRejectsNonKernelVectors) {
  auto data = load("kp2");
  EXPECT_THROW(make_class(data, {1, 0, 0, 0}), Error);
  EXPECT_FALSE(is_effective(data, {3, -1, -1, -1}));
  EXPECT_TRUE(is_effective(data, {-3, 1, 1, 1}));
}

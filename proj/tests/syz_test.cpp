#include <gtest/gtest.h>

#include "oracles.hpp"
#include "toricgw/error.hpp"
#include "toricgw/syz.hpp"

using namespace toricgw;

namespace {

ToricData load(const std::string& name) { return kernel_data(load_stacky_fan(oracle::fan_path(name))); }

MirrorPotential build(const ToricData& data, int cone, const Rational& order) {
  return mirror_potential(data, disk_potentials(data, all_disk_classes(data), order), make_gauge(data, cone), order);
}

}  // namespace

TEST(Coefficients, KP2GaugeExamples) {
  auto data = load("kp2");
  const std::vector<int> free_ray = {3, 1, 2};  // the ray outside each listed cone
  for (int cone = 0; cone < 3; ++cone) {
    auto sol = solve_coefficient_system(data, make_gauge(data, cone));
    for (int i = 0; i < 4; ++i) {
      auto want = i == free_ray[cone] ? Monomial::of(Var::q(1)) : Monomial();
      EXPECT_EQ(sol.monomial(data, i), want) << cone << " " << i;
    }
    EXPECT_FALSE(sol.rational);
  }
}

TEST(Coefficients, KP112HalfIntegralExtra) {
  auto data = load("kp112");
  auto sol = solve_coefficient_system(data, make_gauge(data, 0));
  EXPECT_EQ(sol.monomial(data, 4), Monomial::of(Var::q(1), Rational(1, 2)));
  EXPECT_TRUE(sol.rational);
}

TEST(Coefficients, RelationsHoldAsMonomialIdentities) {
  for (const auto& name : {"c3", "conifold", "kp2", "c3z3", "kp112"}) {
    auto data = load(name);
    for (int cone = 0; cone < static_cast<int>(data.fan.cones.size()); ++cone) {
      auto sol = solve_coefficient_system(data, make_gauge(data, cone));
      EXPECT_TRUE(relations_hold(data, sol)) << name << " " << cone;
      // h2 block recomputed directly: prod_i C_i^{D_i . gamma_a} = q_a over the rays
      for (std::size_t k = 0; k < data.h2_directions.size(); ++k) {
        int a = data.h2_directions[k];
        QVector sum(data.h2_directions.size(), Rational(0));
        for (int i = 0; i < data.m; ++i)
          for (std::size_t l = 0; l < sum.size(); ++l) sum[l] += data.pairing(i, a) * sol.exponents[i][l];
        for (std::size_t l = 0; l < sum.size(); ++l) EXPECT_EQ(sum[l], l == k ? 1 : 0) << name;
      }
      for (int i : make_gauge(data, cone).fixed) EXPECT_TRUE(sol.monomial(data, i).is_one());
    }
  }
}

TEST(Coefficients, BrokenSolutionFailsTheCheck) {
  auto data = load("kp2");
  auto sol = solve_coefficient_system(data, make_gauge(data, 0));
  sol.exponents[3][0] = 2;
  EXPECT_FALSE(relations_hold(data, sol));
}

TEST(Gauge, RejectsNonMaximalOrMissingCone) {
  auto data = load("kp2");
  EXPECT_THROW(make_gauge(data, 5), Error);
  EXPECT_THROW(make_gauge(data, -1), Error);
}

TEST(Gauge, KP2Covariance) {
  auto data = load("kp2");
  auto base = build(data, 0, 4);
  for (int cone = 1; cone < 3; ++cone) {
    auto other = build(data, cone, 4);
    auto chi = gauge_character(data, base, other);
    ASSERT_TRUE(chi.has_value()) << cone;
    ASSERT_EQ(chi->size(), 1u);
    for (int i = 0; i < data.mprime; ++i) {
      Rational pair = 0;
      for (int k = 0; k < data.n; ++k) pair += (*chi)[0][k] * static_cast<long>(data.fan.vector(i)[k]);
      EXPECT_EQ(other.coefficients.exponents[i][0], base.coefficients.exponents[i][0] + pair) << cone << " " << i;
    }
  }
}

TEST(MirrorPotential, LeadingOrderIsTheToricSum) {
  // With every potential at order 0 the mirror is sum_i C_i z^{b_i} with constant series.
  for (const auto& name : {"c3", "conifold", "kp2", "kp112"}) {
    auto data = load(name);
    auto mp = build(data, 0, 3);
    ASSERT_EQ(static_cast<int>(mp.terms.size()), data.mprime);
    for (const auto& t : mp.terms) {
      Rational lead = t.series.constant_term();
      if (t.index < data.m) {
        EXPECT_EQ(lead, 1) << name;
      }
      EXPECT_EQ(t.exponent, data.fan.vector(t.index));
      Rational dot = 0;
      for (int k = 0; k < data.n; ++k) dot += static_cast<long>(mp.covector[k] * t.exponent[k]);
      EXPECT_EQ(dot, 1);
    }
    EXPECT_EQ(mp.covector_basis.front(), mp.covector);
  }
}

TEST(MirrorPotential, ReducedExponentsAreUnimodular) {
  auto data = load("kp2");
  auto mp = build(data, 0, 2);
  std::set<LatticeVector> seen;
  for (const auto& t : mp.terms) {
    EXPECT_EQ(t.reduced.size(), 2u);
    seen.insert(t.reduced);
  }
  EXPECT_EQ(seen.size(), mp.terms.size());
  QMatrix B(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) B(r, c) = static_cast<long>(mp.covector_basis[r][c]);
  auto inv = inverse(B);
  ASSERT_TRUE(inv.has_value());
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) EXPECT_TRUE(is_integer((*inv)(r, c)));
}

TEST(MirrorPotential, EmitsLandauGinzburgDocument) {
  auto data = load("c3z3");
  auto doc = emit_lg_model(data, build(data, 0, Rational(4, 3)));
  EXPECT_EQ(doc["equation"], "uv = G");
  EXPECT_EQ(doc["G"].size(), 4u);
  EXPECT_EQ(doc["G"][3]["kind"], "box");
}

TEST(MirrorPotential, MissingPotentialIsAnError) {
  auto data = load("kp2");
  auto pots = disk_potentials(data, {DiskClass::ray(0)}, 2);
  EXPECT_THROW(mirror_potential(data, pots, make_gauge(data, 0), 2), Error);
}

#include <gtest/gtest.h>

#include "toricgw/error.hpp"
#include "toricgw/series.hpp"

using namespace toricgw;

namespace {

Grading one_var() { return Grading({{Var::y(1), 1}}); }

Series poly(const Grading& g, const Rational& order, Var v, const std::vector<Rational>& c) {
  Series s(g, order);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) s.add_term(k == 0 ? Monomial() : Monomial::of(v, static_cast<long>(k)), c[k]);
  return s;
}

}  // namespace

TEST(Monomial, CanonicalForm) {
  auto m = Monomial::from({{Var::y(2), 1}, {Var::y(1), 2}, {Var::y(2), -1}});
  EXPECT_EQ(m, Monomial::of(Var::y(1), 2));
  EXPECT_EQ(m.to_string(), "y1^2");
  EXPECT_TRUE(Monomial::from({{Var::q(1), 0}}).is_one());
  EXPECT_EQ(Monomial::of(Var::y(1), Rational(1, 3)).pow(3), Monomial::of(Var::y(1)));
  EXPECT_EQ(Var::parse("y_inf"), Var::y(Var::kInfinity));
  EXPECT_EQ(Var::parse("tau3"), Var::tau(3));
  EXPECT_EQ(Var::q(Var::kInfinity).name(), "q_inf");
  EXPECT_THROW(Var::parse("x1"), Error);
}

TEST(Series, TruncatesAndRejectsBadTerms) {
  Series s(one_var(), 2);
  s.add_term(Monomial::of(Var::y(1), 3), 5);
  EXPECT_TRUE(s.is_zero());
  s.add_term(Monomial::of(Var::y(1)), 0);
  EXPECT_TRUE(s.is_zero());
  EXPECT_THROW(s.add_term(Monomial::of(Var::y(1), -1), 1), Error);
  EXPECT_THROW(Grading({{Var::y(1), 1}, {Var::y(2), 0}}), Error);
  Series t(Grading({{Var::y(1), 1}, {Var::y(2), 2}}), 2);
  EXPECT_THROW(t.add_term(Monomial::from({{Var::y(1), -2}, {Var::y(2), 1}}), 1), Error);
}

TEST(Series, ExpAndLogKnownCoefficients) {
  auto g = one_var();
  auto y = poly(g, 5, Var::y(1), {0, 1});
  auto e = exp_series(y);
  EXPECT_EQ(e, poly(g, 5, Var::y(1), {1, 1, Rational(1, 2), Rational(1, 6), Rational(1, 24), Rational(1, 120)}));
  auto l = log_one_plus(y);
  EXPECT_EQ(l, poly(g, 5, Var::y(1), {0, 1, Rational(-1, 2), Rational(1, 3), Rational(-1, 4), Rational(1, 5)}));
  EXPECT_THROW(exp_series(Series::constant(g, 5, 1)), Error);
}

TEST(Series, PowWithRationalExponent) {
  auto g = one_var();
  auto s = poly(g, 4, Var::y(1), {0, 8, 8});  // 8y(1+y)
  auto c = pow_series(s, Rational(1, 3));      // 2 y^{1/3} (1+y)^{1/3}
  EXPECT_EQ(c.coefficient(Monomial::of(Var::y(1), Rational(1, 3))), 2);
  EXPECT_EQ(c.coefficient(Monomial::of(Var::y(1), Rational(4, 3))), Rational(2, 3));
  EXPECT_EQ(pow_series(c, 3).truncated(2), s.truncated(2));
}

TEST(Series, SubstituteKP2Example) {
  auto gy = one_var();
  Grading gq({{Var::q(1), 1}});
  auto g0 = poly(gy, 3, Var::y(1), {0, 2, -15, Rational(560, 3)});
  Assignment a;
  a.emplace(Var::y(1), poly(gq, 3, Var::q(1), {0, 1, 6, 9}));
  auto r = substitute(g0, a);
  EXPECT_EQ(r.truncated(3), poly(gq, 3, Var::q(1), {0, 2, -3, Rational(74, 3)}));
}

TEST(Series, InvertKP2MirrorMap) {
  auto gy = one_var();
  // q = y exp(-3 g0(y)), g0 = 2y - 15y^2 + 560/3 y^3 - 17325/6 y^4
  auto g0 = poly(gy, 5, Var::y(1), {0, 2, -15, Rational(560, 3), Rational(-17325, 6)});
  auto F = exp_series(g0.scaled(-3)).shifted(Monomial::of(Var::y(1)));
  auto inv = invert_map({{Var::q(1), F}}, 4);
  Grading gq({{Var::q(1), 1}});
  EXPECT_EQ(inv.at(Var::y(1)), poly(gq, 4, Var::q(1), {0, 1, 6, 9, 56}));
}

TEST(Series, InvertRejectsNonTriangularSystems) {
  auto gy = one_var();
  auto F = poly(gy, 3, Var::y(1), {1, 1});
  EXPECT_THROW(invert_map({{Var::q(1), F}}, 2), Error);
  Grading two({{Var::y(1), 1}, {Var::y(2), 1}});
  auto G = Series::monomial(two, 3, Monomial::of(Var::y(1)));
  EXPECT_THROW(invert_map({{Var::q(1), G}}, 2), Error);
}

TEST(Series, JsonRoundTrip) {
  Grading g({{Var::y(1), 1}, {Var::tau(3), Rational(1, 3)}});
  Series s(g, 2);
  s.add_term(Monomial::of(Var::tau(3)), 1);
  s.add_term(Monomial::from({{Var::y(1), 1}, {Var::tau(3), 2}}), Rational(-7, 5));
  auto back = series_from_json(to_json(s));
  EXPECT_EQ(back, s);
  EXPECT_EQ(to_json(back).dump(), to_json(s).dump());
  EXPECT_THROW(series_from_json(nlohmann::json::parse(R"({"grading": {}})")), Error);
}

TEST(Series, TextFormat) {
  auto s = poly(one_var(), 3, Var::y(1), {1, -2, Rational(1, 2)});
  EXPECT_EQ(s.to_text(), "1 - 2*y1 + 1/2*y1^2 + O(grade > 3)");
}

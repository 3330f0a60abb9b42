#include "toricgw/ifunction.hpp"

#include "toricgw/error.hpp"
#include "toricgw/parallel.hpp"

namespace toricgw {

namespace {

const char* kModule = "ifunction-engine";

}  // namespace

FactorExpansion hyper_factor(const Rational& p) {
  FactorExpansion f;
  if (p == 0) return f;
  const Rational start = frac_q(p);  // smallest a > 0 in the progression, or 0 when integral
  if (p > 0) {
    // denominator: a in (0, p] with <a> = <p>
    for (Rational a = start == 0 ? Rational(1) : start; a <= p; a += 1) {
      f.scalar /= a;
      f.z_exponent -= 1;
    }
    return f;
  }
  // numerator: a in (p, 0] with <a> = <p>; a = 0 is the surviving divisor
  for (Rational a = p + 1; a <= 0; a += 1) {
    if (a == 0) {
      f.forced = 1;
      continue;
    }
    f.scalar *= a;
    f.z_exponent += 1;
  }
  return f;
}

CoeffExtraction z_extract(const ToricData& data, const EffClass& d) {
  CoeffExtraction c;
  Integer ceil_sum = 0;
  for (int i = 0; i < data.mprime; ++i) {
    if (i == data.infinity_vector) continue;
    auto f = hyper_factor(d.pairings[i]);
    c.z_exponent += f.z_exponent;
    c.scalar *= f.scalar;
    if (f.forced) c.forced.push_back(i);
    ceil_sum += ceil_q(d.pairings[i]);
  }
  if (c.z_exponent + static_cast<long>(c.forced.size()) != -Rational(ceil_sum))
    fail_consistency(kModule, "z_extract", "z-degree does not match the ceiling sum", to_string(d.pairings));
  if (data.infinity_vector < 0) {
    Rational rho = 0;
    for (const auto& x : d.pairings) rho += x;
    if (Rational(ceil_sum) != rho + d.sector.age)
      fail_consistency(kModule, "z_extract", "z-degree does not match rho.d + age", to_string(d.pairings));
  } else {
    const Rational& k = d.pairings[data.infinity_vector];
    if (k != 0) {
      c.scalar /= k;
      c.z_exponent -= 1;
    }
  }
  if (c.forced.size() >= 2) return c;
  if (c.z_exponent == -1) {
    if (c.forced.empty())
      c.z1_scalar_by_sector[d.sector.vector] = c.scalar;
    else
      c.z1_divisor_linear[c.forced.front()] = c.scalar;
  } else if (c.z_exponent == -2 && c.forced.empty() && d.sector.is_zero() && data.infinity_vector >= 0) {
    c.z2_H0 = c.scalar;
    Rational total = 0;
    for (int i = 0; i < data.mprime; ++i) {
      if (!is_integer(d.pairings[i]) || d.pairings[i] < 0)
        fail_consistency(kModule, "z_extract", "z^-2 class with a non-effective pairing", to_string(d.pairings));
      if (i != data.infinity_vector) total += d.pairings[i];
    }
    if (total + 1 != 2 || d.pairings[data.infinity_vector] != 1)
      fail_consistency(kModule, "z_extract", "z^-2 class violates the dimension constraint", to_string(d.pairings));
  }
  return c;
}

RelativeOracle relative_ifunction_oracle(const CompactifiedData& cd, const Rational& bound) {
  const auto& bar = cd.bar;
  auto classes = enumerate_effective(bar, bound);
  std::vector<CoeffExtraction> ext(classes.size());
  parallel_for(classes.size(), [&](std::size_t t) { ext[t] = z_extract(bar, classes[t]); });

  Grading grading = bar.y_grading();
  RelativeOracle out;
  out.bound = bound;
  out.g.assign(bar.mprime, Series(grading, bound));
  out.z2_H0 = Series(grading, bound);
  for (std::size_t t = 0; t < classes.size(); ++t) {
    Monomial y = y_monomial(bar, classes[t]);
    for (const auto& [j, s] : ext[t].z1_divisor_linear)
      if (bar.is_ray(j)) out.g[j].add_term(y, s);
    for (const auto& [v, s] : ext[t].z1_scalar_by_sector)
      for (int j = bar.m; j < bar.mprime; ++j)
        if (bar.fan.vector(j) == v) out.g[j].add_term(y, s);
    if (ext[t].z2_H0 != 0) out.z2_H0.add_term(y, ext[t].z2_H0);
  }

  Series expected(grading, bound);
  expected.add_term(y_monomial(bar, cd.d_infinity), 1);
  if (!(out.z2_H0 == expected))
    fail_consistency(kModule, "relative_ifunction_oracle", "z^-2 H^0 part is not the monomial y^{d_inf}",
                     out.z2_H0.to_text());

  for (int a : bar.h2_directions) {
    Series s(grading, bound);
    for (int j = 0; j < bar.m; ++j)
      if (bar.pairing(j, a) != 0) s = s + out.g[j].scaled(bar.pairing(j, a));
    out.z1_pieces.emplace(bar.q_var(a), s);
  }
  for (int j = bar.m; j < bar.mprime; ++j) out.z1_pieces.emplace(bar.tau_var(j), out.g[j]);
  return out;
}

}  // namespace toricgw

#pragma once

#include <map>
#include <vector>

#include "toricgw/classes.hpp"
#include "toricgw/compactification.hpp"
#include "toricgw/series.hpp"

namespace toricgw {

// Leading part of prod_{a<=0}(D + a z) / prod_{a<=p}(D + a z): scalar * z^z_exponent * D^forced.
struct FactorExpansion {
  Rational z_exponent = 0;
  Rational scalar = 1;
  int forced = 0;
};

FactorExpansion hyper_factor(const Rational& p);

struct CoeffExtraction {
  Rational z_exponent = 0;  // total power of z
  Rational scalar = 1;
  std::vector<int> forced;  // indices whose divisor factor survives
  std::map<LatticeVector, Rational> z1_scalar_by_sector;  // key: v(d), zero vector for 1
  std::map<int, Rational> z1_divisor_linear;
  Rational z2_H0 = 0;  // only with a divisor at infinity
};

// Uses data.infinity_vector (if set) for the factor 1/(D_inf + (D_inf.d) z).
CoeffExtraction z_extract(const ToricData& data, const EffClass& d);

struct RelativeOracle {
  std::vector<Series> g;               // per vector index of the bar fan
  std::map<Var, Series> z1_pieces;     // q_a and tau_j corrections
  Series z2_H0;
  Rational bound;
};

// Sums z_extract over the bar fan's effective classes of grade <= bound.
RelativeOracle relative_ifunction_oracle(const CompactifiedData& cd, const Rational& bound);

}  // namespace toricgw

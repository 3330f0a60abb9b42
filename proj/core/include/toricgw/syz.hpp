#pragma once

#include <optional>
#include <vector>

#include "toricgw/invariants.hpp"

namespace toricgw {

struct GaugeChoice {
  int cone = 0;   // index into the fan's listed cones
  IndexSet fixed;  // its rays; C_i = 1 there
};

GaugeChoice make_gauge(const ToricData& data, int cone);

// C_i and C_{v_j} as q-monomials; exps[i][k] is the exponent of the k-th h2 q variable.
struct CoefficientSolution {
  GaugeChoice gauge;
  std::vector<QVector> exponents;  // per vector index, length r'
  bool rational = false;           // some exponent is not an integer
  Monomial monomial(const ToricData& data, int i) const;
};

CoefficientSolution solve_coefficient_system(const ToricData& data, const GaugeChoice& gauge);
// Checks both relation blocks as exact exponent identities.
bool relations_hold(const ToricData& data, const CoefficientSolution& sol);

struct MirrorTerm {
  int index = 0;
  LatticeVector exponent;  // b_i or v_j
  LatticeVector reduced;   // n-1 coordinates on the hyperplane <v, .> = 1
  Series series;           // disk potential
};

struct MirrorPotential {
  CoefficientSolution coefficients;
  LatticeVector covector;
  std::vector<LatticeVector> covector_basis;  // rows; first row is the covector
  std::vector<MirrorTerm> terms;
};

MirrorPotential mirror_potential(const ToricData& data, const std::vector<DiskPotential>& potentials,
                                 const GaugeChoice& gauge, const Rational& order);

// chi with C^b_i = C^a_i q^{<chi, b_i>} for every i, when the term series agree.
std::optional<std::vector<QVector>> gauge_character(const ToricData& data, const MirrorPotential& a,
                                                    const MirrorPotential& b);

nlohmann::json emit_lg_model(const ToricData& data, const MirrorPotential& mp);

}  // namespace toricgw

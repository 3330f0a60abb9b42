#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "toricgw/fan.hpp"
#include "toricgw/linalg.hpp"
#include "toricgw/series.hpp"

namespace toricgw {

struct DualClass {
  int index = 0;
  QVector pairings;                                    // D_i . D_j^dual
  IndexSet cone;                                       // minimal cone containing b_j
  std::vector<std::pair<int, Rational>> coefficients;  // c_{ji}
  IndexSet anticone;                                   // I_j
};

struct ToricData {
  StackyFan fan;
  int n = 0, m = 0, mprime = 0, r = 0, rprime = 0;

  std::vector<QVector> kernel_basis;  // gamma_a, length m'
  QMatrix pairing;                    // m' x r, m_{ia} = D_i . gamma_a
  std::vector<QVector> basis_p;       // p_a as lifts: p_a . d = sum_i basis_p[a][i] d_i on L
  std::vector<int> h2_directions;     // a with p_a outside span{D_j : j extra}
  std::vector<int> extra_directions;
  bool basis_user_supplied = false;

  std::vector<IndexSet> minimal_anticones;           // complements of maximal cones
  std::vector<std::vector<QVector>> cone_generators;  // per minimal anticone
  std::optional<LatticeVector> cy_covector;
  std::vector<DualClass> dual_classes;  // j = m .. m'-1

  // Naming: external index per vector (-1 for the divisor at infinity).
  std::vector<int> external_index;
  int infinity_vector = -1;
  int infinity_direction = -1;

  std::vector<int> coordinate_rows;
  QMatrix coordinate_inverse;

  bool is_ray(int i) const { return i < m; }
  bool in_kernel(const QVector& d) const;
  QVector coordinates(const QVector& d) const;  // (p_a . d)_a
  Rational grade(const QVector& d) const;
  QVector class_of(const QVector& coords) const;
  bool is_anticone(const IndexSet& s) const;
  const DualClass& dual(int j) const;

  Var y_var(int a) const;
  Var q_var(int a) const;
  Var tau_var(int j) const;
  Grading y_grading() const;
};

struct KernelOptions {
  bool require_calabi_yau = false;
};

ToricData kernel_data(const StackyFan& fan, const KernelOptions& options = {});

// Prescribed kernel basis; used for compactified fans whose basis is adapted by hand.
ToricData toric_data_with_kernel(const StackyFan& fan, std::vector<QVector> gamma,
                                 std::vector<int> h2_directions, std::vector<int> external_index,
                                 int infinity_vector, int infinity_direction);

struct EffClass {
  QVector pairings;
  QVector coords;
  Rational grade;
  BoxElement sector;
};

EffClass make_class(const ToricData& data, const QVector& pairings);
BoxElement sector(const ToricData& data, const QVector& pairings);
inline BoxElement sector(const ToricData& data, const EffClass& d) { return sector(data, d.pairings); }
bool is_effective(const ToricData& data, const QVector& pairings);
EffClass dual_class(const ToricData& data, int j);

struct SemiFanoCertificate {
  bool semi_fano = true;
  std::vector<std::pair<IndexSet, QVector>> witnesses;  // per minimal anticone
  std::optional<IndexSet> violated;
};

SemiFanoCertificate verify_semi_fano(const ToricData& data);

nlohmann::json to_json(const ToricData& data);
nlohmann::json to_json(const SemiFanoCertificate& c);

}  // namespace toricgw

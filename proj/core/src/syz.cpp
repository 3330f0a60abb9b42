#include "toricgw/syz.hpp"

#include <algorithm>

#include "toricgw/error.hpp"
#include "toricgw/linalg.hpp"

namespace toricgw {

namespace {

const char* kModule = "syz-builder";

// sum_i m_{ia} x_i (+ extras for the second block) == rhs_a for every a.
std::vector<QVector> relation_rhs(const ToricData& data) {
  const std::size_t rp = data.h2_directions.size();
  std::vector<QVector> rhs;
  for (std::size_t k = 0; k < rp; ++k) {
    QVector e(rp, Rational(0));
    e[k] = 1;
    rhs.push_back(e);
  }
  for (int a : data.extra_directions) {
    QVector e(rp, Rational(0));
    for (int j = data.m; j < data.mprime; ++j) {
      QVector w = data.coordinates(data.dual(j).pairings);
      for (std::size_t k = 0; k < rp; ++k) e[k] -= data.pairing(j, a) * w[data.h2_directions[k]];
    }
    rhs.push_back(e);
  }
  return rhs;
}

// Directions in relation order: h2 first, then extra.
std::vector<int> relation_directions(const ToricData& data) {
  std::vector<int> dirs = data.h2_directions;
  dirs.insert(dirs.end(), data.extra_directions.begin(), data.extra_directions.end());
  return dirs;
}

Rational coefficient_in(const ToricData& data, int i, int a) {
  // first block uses rays only; extra divisors never pair with h2 directions
  if (i >= data.m && std::find(data.h2_directions.begin(), data.h2_directions.end(), a) != data.h2_directions.end())
    return 0;
  return data.pairing(i, a);
}

}  // namespace

GaugeChoice make_gauge(const ToricData& data, int cone) {
  const auto& cones = data.fan.cones;
  if (cone < 0 || cone >= static_cast<int>(cones.size()))
    fail_validation(kModule, "gauge", "cone index out of range", std::to_string(cone));
  if (static_cast<int>(cones[cone].size()) != data.n)
    fail_validation(kModule, "gauge", "gauge cone is not maximal", std::to_string(cone));
  return {cone, cones[cone]};
}

Monomial CoefficientSolution::monomial(const ToricData& data, int i) const {
  std::vector<Monomial::Entry> e;
  for (std::size_t k = 0; k < data.h2_directions.size(); ++k)
    e.emplace_back(data.q_var(data.h2_directions[k]), exponents[i][k]);
  return Monomial::from(e);
}

CoefficientSolution solve_coefficient_system(const ToricData& data, const GaugeChoice& gauge) {
  if (!data.cy_covector) fail_validation(kModule, "solve_coefficient_system", "fan is not Calabi-Yau");
  const std::size_t rp = data.h2_directions.size();
  CoefficientSolution sol;
  sol.gauge = gauge;
  sol.exponents.assign(data.mprime, QVector(rp, Rational(0)));

  IndexSet free;
  for (int i = 0; i < data.mprime; ++i)
    if (!std::binary_search(gauge.fixed.begin(), gauge.fixed.end(), i)) free.push_back(i);
  auto dirs = relation_directions(data);
  auto rhs = relation_rhs(data);
  QMatrix A(dirs.size(), free.size());
  for (std::size_t row = 0; row < dirs.size(); ++row)
    for (std::size_t k = 0; k < free.size(); ++k) A(row, k) = coefficient_in(data, free[k], dirs[row]);
  if (rank(A) != free.size() || dirs.size() != free.size()) {
    auto ker = nullspace(A);
    fail_validation(kModule, "solve_coefficient_system", "gauge fixing leaves free coefficients",
                    ker.empty() ? "" : to_string(ker.front()));
  }
  for (std::size_t k = 0; k < rp; ++k) {
    QVector b(dirs.size());
    for (std::size_t row = 0; row < dirs.size(); ++row) b[row] = rhs[row][k];
    auto x = solve(A, b);
    if (!x) fail_consistency(kModule, "solve_coefficient_system", "relations are inconsistent");
    for (std::size_t t = 0; t < free.size(); ++t) sol.exponents[free[t]][k] = (*x)[t];
  }
  for (const auto& v : sol.exponents)
    for (const auto& x : v)
      if (!is_integer(x)) sol.rational = true;
  if (!relations_hold(data, sol))
    fail_consistency(kModule, "solve_coefficient_system", "relations fail after solving");
  return sol;
}

bool relations_hold(const ToricData& data, const CoefficientSolution& sol) {
  auto dirs = relation_directions(data);
  auto rhs = relation_rhs(data);
  for (std::size_t row = 0; row < dirs.size(); ++row) {
    Monomial lhs;
    for (int i = 0; i < data.mprime; ++i) {
      Rational e = coefficient_in(data, i, dirs[row]);
      if (e != 0) lhs = lhs * sol.monomial(data, i).pow(e);
    }
    std::vector<Monomial::Entry> r;
    for (std::size_t k = 0; k < data.h2_directions.size(); ++k)
      r.emplace_back(data.q_var(data.h2_directions[k]), rhs[row][k]);
    if (!(lhs == Monomial::from(r))) return false;
  }
  for (int i : sol.gauge.fixed)
    if (!sol.monomial(data, i).is_one()) return false;
  return true;
}

MirrorPotential mirror_potential(const ToricData& data, const std::vector<DiskPotential>& potentials,
                                 const GaugeChoice& gauge, const Rational& order) {
  MirrorPotential mp;
  mp.coefficients = solve_coefficient_system(data, gauge);
  mp.covector = *data.cy_covector;
  const int n = data.n;

  // Unimodular completion: Q with v Q = e_1; rows of Q^{-1} form a basis of M starting with v.
  ZMatrix row(1, n);
  for (int k = 0; k < n; ++k) row(0, k) = Integer(static_cast<long>(mp.covector[k]));
  auto snf = smith_normal_form(row);
  QMatrix V = to_rational(snf.V);
  if (snf.U(0, 0) * snf.S(0, 0) < 0)
    for (int k = 0; k < n; ++k) V(k, 0) = -V(k, 0);
  QMatrix basis = *inverse(V);
  for (int k = 0; k < n; ++k) {
    LatticeVector b(n);
    for (int l = 0; l < n; ++l) b[l] = to_int64(basis(k, l));
    mp.covector_basis.push_back(b);
  }
  if (mp.covector_basis.front() != mp.covector)
    fail_consistency(kModule, "mirror_potential", "covector completion does not start with the covector");

  for (int i = 0; i < data.mprime; ++i) {
    DiskClass want = i < data.m ? DiskClass::ray(i) : DiskClass::box(i);
    auto it = std::find_if(potentials.begin(), potentials.end(), [&](const auto& p) { return p.disk == want; });
    if (it == potentials.end())
      fail_validation(kModule, "mirror_potential", "missing disk potential", want.to_string());
    MirrorTerm t;
    t.index = i;
    t.exponent = data.fan.vector(i);
    QVector c = basis * to_qvector(t.exponent);
    if (c[0] != 1) fail_consistency(kModule, "mirror_potential", "exponent off the covector hyperplane");
    for (int k = 1; k < n; ++k) t.reduced.push_back(to_int64(c[k]));
    t.series = it->series.truncated(std::min(order, it->series.order()));
    mp.terms.push_back(std::move(t));
  }
  return mp;
}

std::optional<std::vector<QVector>> gauge_character(const ToricData& data, const MirrorPotential& a,
                                                    const MirrorPotential& b) {
  const std::size_t rp = data.h2_directions.size();
  if (a.terms.size() != b.terms.size()) return std::nullopt;
  for (std::size_t t = 0; t < a.terms.size(); ++t)
    if (a.terms[t].exponent != b.terms[t].exponent || !(a.terms[t].series == b.terms[t].series)) return std::nullopt;
  QMatrix B(data.mprime, data.n);
  for (int i = 0; i < data.mprime; ++i)
    for (int k = 0; k < data.n; ++k) B(i, k) = static_cast<long>(data.fan.vector(i)[k]);
  std::vector<QVector> chi;
  for (std::size_t k = 0; k < rp; ++k) {
    QVector diff(data.mprime);
    for (int i = 0; i < data.mprime; ++i)
      diff[i] = b.coefficients.exponents[i][k] - a.coefficients.exponents[i][k];
    auto x = solve(B, diff);
    if (!x) return std::nullopt;
    chi.push_back(*x);
  }
  return chi;
}

nlohmann::json emit_lg_model(const ToricData& data, const MirrorPotential& mp) {
  nlohmann::json doc;
  doc["equation"] = "uv = G";
  doc["W"] = "u";
  auto terms = nlohmann::json::array();
  for (const auto& t : mp.terms) {
    nlohmann::json c = nlohmann::json::object();
    for (std::size_t k = 0; k < data.h2_directions.size(); ++k) {
      const auto& x = mp.coefficients.exponents[t.index][k];
      if (x != 0) c[data.q_var(data.h2_directions[k]).name()] = to_string(x);
    }
    terms.push_back({{"index", t.index},
                     {"label", data.fan.label(t.index)},
                     {"kind", t.index < data.m ? "ray" : "box"},
                     {"exponent", t.exponent},
                     {"reduced_exponent", t.reduced},
                     {"C", c},
                     {"series", to_json(t.series)}});
  }
  doc["G"] = terms;
  doc["gauge"] = {{"cone", mp.coefficients.gauge.cone}, {"fixed", mp.coefficients.gauge.fixed}};
  doc["rational_exponents"] = mp.coefficients.rational;
  doc["covector"] = mp.covector;
  doc["covector_basis"] = mp.covector_basis;
  return doc;
}

}  // namespace toricgw

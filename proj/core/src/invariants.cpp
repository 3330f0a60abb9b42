#include "toricgw/invariants.hpp"

#include <algorithm>

#include "toricgw/classes.hpp"
#include "toricgw/error.hpp"
#include "toricgw/parallel.hpp"

namespace toricgw {

namespace {

const char* kModule = "invariants";

// Grades of q_a and tau_j: those of their leading y-monomials.
Grading target_weights(const ToricData& data) {
  std::map<Var, Rational> w;
  for (int a : data.h2_directions) w[data.q_var(a)] = 1;
  for (int j = data.m; j < data.mprime; ++j) w[data.tau_var(j)] = data.grade(data.dual(j).pairings);
  return Grading(w);
}

void check_normalization(const ToricData& data, const DiskPotential& dp) {
  const auto& s = dp.series;
  if (dp.disk.kind == DiskClass::Kind::Ray) {
    if (s.constant_term() != 1)
      fail_consistency(kModule, "disk_potential", "constant term is not 1", dp.disk.to_string());
    return;
  }
  Var tau = data.tau_var(dp.disk.index);
  Rational lead = s.grading().weight(tau);
  auto v = s.valuation();
  bool ok = v && *v == lead && s.coefficient(Monomial::of(tau)) == 1;
  if (ok)
    for (const auto& [k, c] : s.terms())
      if (k.grade == lead && !(k.monomial == Monomial::of(tau))) ok = false;
  if (!ok) fail_consistency(kModule, "disk_potential", "leading term is not tau", dp.disk.to_string());
}

DiskPotential potential_from_map(const ToricData& data, const MirrorMap& mm, const Assignment& inverse,
                                 const DiskClass& disk, const Rational& order) {
  Grading yg = data.y_grading();
  Series p;
  if (disk.kind == DiskClass::Kind::Ray) {
    p = exp_series(-mm.g[disk.index]);
  } else {
    const auto& dual = data.dual(disk.index);
    Series s(yg, mm.order);
    for (const auto& [i, c] : dual.coefficients) s = s + mm.g[i].scaled(c);
    p = exp_series(-s).shifted(y_monomial(data, dual_class(data, disk.index)));
  }
  Series out = inverse.empty() ? p.regraded(target_weights(data)) : substitute(p, inverse);
  if (out.order() < order)
    fail_consistency(kModule, "disk_potential", "potential is not determined to the requested order",
                     disk.to_string());
  DiskPotential dp{disk, out.truncated(order), disk.kind == DiskClass::Kind::Ray ? "1+delta" : "tau+delta"};
  check_normalization(data, dp);
  return dp;
}

Series compute_oracle(const CompactifiedData& cd, const Rational& order) {
  const auto& bar = cd.bar;
  Rational work = order + 2;
  MirrorMap mm = relative_mirror_map(cd, forward_order_for_inverse(bar, work));
  Assignment inverse = inverse_mirror_map(mm, work);
  Monomial mono = y_monomial(bar, cd.d_infinity);
  Series yd = Series::monomial(bar.y_grading(), bar.y_grading().grade(mono) + work, mono);
  Series value = substitute(yd, inverse);
  Var qinf = bar.q_var(bar.infinity_direction);
  // q^{-beta-bar'}: beta-bar' is the basis element at infinity
  Series shifted = value.shifted(Monomial::of(qinf, -1));
  for (const auto& [k, c] : shifted.terms())
    if (k.monomial.exponent(qinf) != 0)
      fail_consistency(kModule, "oracle_potential", "q_inf survives in y^{d_inf} q^{-beta'}", k.monomial.to_string());
  Series out = shifted.regraded(target_weights(cd.base));
  if (out.order() < order)
    fail_consistency(kModule, "oracle_potential", "oracle is not determined to the requested order");
  return out.truncated(order);
}

}  // namespace

std::vector<DiskClass> all_disk_classes(const ToricData& data) {
  std::vector<DiskClass> out;
  for (int i = 0; i < data.m; ++i) out.push_back(DiskClass::ray(i));
  for (int j = data.m; j < data.mprime; ++j) out.push_back(DiskClass::box(j));
  return out;
}

std::vector<DiskPotential> disk_potentials(const ToricData& data, const std::vector<DiskClass>& disks,
                                           const Rational& order) {
  if (order <= 0) fail_validation(kModule, "disk_potential", "order must be positive", to_string(order));
  for (const auto& d : disks) check_disk(data, d);
  if (!data.cy_covector) fail_validation(kModule, "disk_potential", "fan is not Calabi-Yau");
  Rational inv_order = order + 1;
  MirrorMap mm = toric_mirror_map(data, forward_order_for_inverse(data, inv_order));
  Assignment inverse = inverse_mirror_map(mm, inv_order);
  std::vector<DiskPotential> out(disks.size());
  parallel_for(disks.size(), [&](std::size_t t) { out[t] = potential_from_map(data, mm, inverse, disks[t], order); });
  return out;
}

DiskPotential disk_potential(const ToricData& data, const DiskClass& disk, const Rational& order) {
  return disk_potentials(data, {disk}, order).front();
}

const InvariantEntry* InvariantTable::find(const std::vector<Rational>& alpha,
                                           const std::vector<std::pair<int, long>>& ins) const {
  for (const auto& e : entries)
    if (e.alpha == alpha && e.insertions == ins) return &e;
  return nullptr;
}

InvariantTable extract_invariants(const ToricData& data, const DiskPotential& dp) {
  InvariantTable table;
  table.disk = dp.disk;
  // insertions are listed in the order of their box-element vectors
  std::vector<int> extras;
  for (int j = data.m; j < data.mprime; ++j) extras.push_back(j);
  std::sort(extras.begin(), extras.end(), [&](int a, int b) { return data.fan.vector(a) < data.fan.vector(b); });
  for (const auto& [k, c] : dp.series.terms()) {
    InvariantEntry e;
    std::size_t used = 0;
    for (int a : data.h2_directions) {
      Rational x = k.monomial.exponent(data.q_var(a));
      if (x != 0) ++used;
      e.alpha.push_back(x);
    }
    e.value = c;
    for (int j : extras) {
      Rational x = k.monomial.exponent(data.tau_var(j));
      if (x == 0) continue;
      if (!is_integer(x) || x < 0)
        fail_consistency(kModule, "extract_invariants", "non-representable exponent", k.monomial.to_string());
      ++used;
      long n = to_int64(x);
      e.insertions.emplace_back(j, n);
      e.value *= factorial(n);
    }
    if (used != k.monomial.entries().size())
      fail_consistency(kModule, "extract_invariants", "non-representable exponent", k.monomial.to_string());
    table.entries.push_back(std::move(e));
  }
  std::sort(table.entries.begin(), table.entries.end(), [](const auto& a, const auto& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.insertions < b.insertions;
  });
  return table;
}

Series oracle_potential(const CompactifiedData& cd, const Rational& order) {
  auto c = compare_with_oracle(cd, order);
  if (!c.match)
    fail_consistency(kModule, "oracle_potential", "oracle differs from the disk potential",
                     c.first_difference ? c.first_difference->to_string() : "order");
  return c.oracle;
}

OracleComparison compare_with_oracle(const CompactifiedData& cd, const Rational& order) {
  if (order <= 0) fail_validation(kModule, "oracle_potential", "order must be positive", to_string(order));
  OracleComparison c;
  c.disk = disk_potential(cd.base, cd.disk, order).series;
  c.oracle = compute_oracle(cd, order);
  c.match = c.disk == c.oracle;
  if (!c.match) {
    std::map<Series::Key, std::pair<Rational, Rational>> diff;
    for (const auto& [k, x] : c.disk.terms()) diff[k].first = x;
    for (const auto& [k, x] : c.oracle.terms()) diff[k].second = x;
    for (const auto& [k, p] : diff)
      if (p.first != p.second) {
        c.first_difference = k.monomial;
        c.disk_coefficient = p.first;
        c.oracle_coefficient = p.second;
        break;
      }
  }
  return c;
}

nlohmann::json to_json(const DiskPotential& dp) {
  return {{"disk", dp.disk.to_string()}, {"normalization", dp.normalization}, {"series", to_json(dp.series)}};
}

nlohmann::json to_json(const ToricData& data, const InvariantTable& table) {
  auto entries = nlohmann::json::array();
  for (const auto& e : table.entries) {
    auto alpha = nlohmann::json::array();
    for (const auto& x : e.alpha) {
      if (is_integer(x))
        alpha.push_back(to_int64(x));
      else
        alpha.push_back(to_string(x));
    }
    nlohmann::json ins = nlohmann::json::object();
    for (const auto& [j, n] : e.insertions) ins[data.fan.label(j)] = n;
    entries.push_back({{"alpha", alpha}, {"insertions", ins}, {"value", to_string(e.value)}});
  }
  return {{"disk", table.disk.to_string()}, {"entries", entries}};
}

nlohmann::json to_json(const OracleComparison& c) {
  nlohmann::json j;
  j["status"] = c.match ? "MATCH" : "MISMATCH";
  j["disk_potential"] = to_json(c.disk);
  j["oracle_potential"] = to_json(c.oracle);
  if (c.first_difference)
    j["first_difference"] = {{"monomial", to_json(*c.first_difference)},
                             {"disk_potential", to_string(c.disk_coefficient)},
                             {"oracle_potential", to_string(c.oracle_coefficient)}};
  return j;
}

}  // namespace toricgw

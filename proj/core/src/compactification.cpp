#include "toricgw/compactification.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toricgw/classes.hpp"
#include "toricgw/error.hpp"

namespace toricgw {

namespace {

const char* kModule = "fan-core";
const char* kOp = "validate_compactification";

QVector lattice_sum(const StackyFan& fan, const IndexSet& s) {
  QVector w(fan.rank, Rational(0));
  for (int i : s)
    for (int k = 0; k < fan.rank; ++k) w[k] += static_cast<long>(fan.vector(i)[k]);
  return w;
}

}  // namespace

DiskClass DiskClass::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) fail_validation(kModule, "disk", "disk selector must be ray:<i> or box:<j>", std::string(text));
  auto kind = text.substr(0, colon);
  auto num = text.substr(colon + 1);
  if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail_validation(kModule, "disk", "disk selector must be ray:<i> or box:<j>", std::string(text));
  int index = std::stoi(std::string(num));
  if (kind == "ray") return ray(index);
  if (kind == "box") return box(index);
  fail_validation(kModule, "disk", "disk selector must be ray:<i> or box:<j>", std::string(text));
}

std::string DiskClass::to_string() const {
  return (kind == Kind::Ray ? "ray:" : "box:") + std::to_string(index);
}

void check_disk(const ToricData& data, const DiskClass& disk) {
  bool ok = disk.kind == DiskClass::Kind::Ray ? (disk.index >= 0 && disk.index < data.m)
                                              : (disk.index >= data.m && disk.index < data.mprime);
  if (!ok) fail_validation("invariants", "disk", "disk selector out of range", disk.to_string());
}

QVector CompactifiedData::pad(const QVector& base_pairings) const {
  QVector out(bar_index.size() + 1, Rational(0));
  for (std::size_t i = 0; i < base_pairings.size(); ++i) out[bar_index[i]] = base_pairings[i];
  return out;
}

CompactifiedData validate_compactification(const ToricData& base, const StackyFan& bar_fan, const DiskClass& disk) {
  check_disk(base, disk);
  const auto& fan = base.fan;
  const int n = fan.rank, m = base.m, mp = base.mprime;
  if (bar_fan.rank != n) fail_validation(kModule, kOp, "bar fan has a different rank");
  const LatticeVector& b0 = fan.vector(disk.index);
  LatticeVector binf(n);
  for (int k = 0; k < n; ++k) binf[k] = -b0[k];

  // Canonical order: base rays, infinity, base extras.
  std::map<LatticeVector, int> ray_pos;
  for (int i = 0; i < bar_fan.num_rays(); ++i) ray_pos[bar_fan.rays[i]] = i;
  if (!ray_pos.count(binf)) fail_validation(kModule, kOp, "missing ray -b", to_string(binf));
  std::vector<int> old_to_new(bar_fan.num_rays(), -1);
  for (int i = 0; i < m; ++i) {
    auto it = ray_pos.find(fan.rays[i]);
    if (it == ray_pos.end()) fail_validation(kModule, kOp, "bar fan lacks a ray of the fan", to_string(fan.rays[i]));
    old_to_new[it->second] = i;
  }
  old_to_new[ray_pos[binf]] = m;
  for (int i = 0; i < bar_fan.num_rays(); ++i)
    if (old_to_new[i] < 0) fail_validation(kModule, kOp, "bar fan has an unexpected ray", to_string(bar_fan.rays[i]));
  if (!bar_fan.extra_vectors.empty()) {
    std::set<LatticeVector> a(bar_fan.extra_vectors.begin(), bar_fan.extra_vectors.end());
    std::set<LatticeVector> b(fan.extra_vectors.begin(), fan.extra_vectors.end());
    if (a != b) fail_validation(kModule, kOp, "bar fan extra vectors differ from the fan's");
  }
  std::vector<LatticeVector> rays(fan.rays);
  rays.push_back(binf);
  std::vector<IndexSet> cones;
  for (const auto& c : bar_fan.cones) {
    IndexSet nc;
    for (int i : c) nc.push_back(old_to_new[i]);
    cones.push_back(nc);
  }
  std::vector<std::string> labels;
  if (!fan.labels.empty()) {
    labels.assign(fan.labels.begin(), fan.labels.begin() + m);
    labels.push_back("inf");
    labels.insert(labels.end(), fan.labels.begin() + m, fan.labels.end());
  }
  StackyFan bar = make_stacky_fan(n, rays, cones, fan.extra_vectors, labels);

  CompactifiedData cd;
  cd.disk = disk;
  cd.infinity_vector = m;
  for (int i = 0; i < mp; ++i) cd.bar_index.push_back(i < m ? i : i + 1);

  for (const auto& c : fan.cones) {
    IndexSet mapped;
    for (int i : c) mapped.push_back(cd.bar_index[i]);
    if (!bar.is_cone(mapped)) fail_validation(kModule, kOp, "bar fan does not contain a cone of the fan");
  }

  // Coverage of |Sigma| + R b_inf.
  std::vector<QVector> probes;
  for (int i = 0; i < m; ++i) probes.push_back(to_qvector(fan.rays[i]));
  for (const auto& c : fan.maximal_cones()) probes.push_back(lattice_sum(fan, c));
  const std::vector<Rational> shifts = {0, Rational(1, 2), 1, 2, 10};
  QVector b0q = to_qvector(b0);
  for (const auto& w : std::vector<QVector>(probes))
    for (const auto& t : shifts) {
      QVector p = w;
      for (int k = 0; k < n; ++k) p[k] -= t * b0q[k];
      probes.push_back(p);
    }
  probes.push_back(to_qvector(binf));
  for (const auto& p : probes)
    if (!bar.locate(p)) fail_validation(kModule, kOp, "incomplete fan", to_string(p));

  // Kernel basis of the bar fan: padded gamma_a, then beta-bar'.
  QVector d_inf(mp + 1, Rational(0));
  d_inf[cd.bar_index[disk.index]] = 1;
  d_inf[m] = 1;
  QVector beta = d_inf;
  if (disk.kind == DiskClass::Kind::Box) {
    QVector dual = cd.pad(base.dual(disk.index).pairings);
    for (int i = 0; i <= mp; ++i) beta[i] -= dual[i];
  }
  std::vector<QVector> gamma;
  for (const auto& g : base.kernel_basis) gamma.push_back(cd.pad(g));
  gamma.push_back(beta);
  std::vector<int> h2 = base.h2_directions;
  h2.push_back(base.r);
  std::vector<int> ext;
  for (int i = 0; i <= mp; ++i) ext.push_back(i == m ? -1 : (i < m ? i : i - 1));
  cd.base = base;
  cd.bar = toric_data_with_kernel(bar, gamma, h2, ext, m, base.r);
  cd.d_infinity = make_class(cd.bar, d_inf);
  cd.beta_bar = make_class(cd.bar, beta);

  if (cd.beta_bar.pairings[m] != 1) fail_validation(kModule, kOp, "decomposition check failed: D_inf . beta' != 1");
  Rational c1 = 0;
  for (const auto& x : cd.beta_bar.pairings) c1 += x;
  if (c1 != 2) fail_validation(kModule, kOp, "decomposition check failed: c_1 . beta' != 2");
  Rational probe = 0;
  for (const auto& c : base.cone_generators)
    for (const auto& g : c) probe = std::max(probe, base.grade(g));
  for (const auto& alpha : enumerate_effective(base, 2 * probe)) {
    QVector padded = cd.pad(alpha.pairings);
    if (padded[m] != 0 || !is_effective(cd.bar, padded))
      fail_validation(kModule, kOp, "decomposition check failed: effective class of the fan is not effective in the bar fan",
                      to_string(alpha.pairings));
    if (base.cy_covector && c1_pairing(base, alpha) != 0)
      fail_validation(kModule, kOp, "decomposition check failed: c_1 . alpha != 0", to_string(alpha.pairings));
  }
  return cd;
}

}  // namespace toricgw

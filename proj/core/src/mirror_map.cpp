#include "toricgw/mirror_map.hpp"

#include <algorithm>

#include "toricgw/classes.hpp"
#include "toricgw/error.hpp"
#include "toricgw/ifunction.hpp"
#include "toricgw/parallel.hpp"

namespace toricgw {

namespace {

const char* kModule = "mirror-maps";

// (-1)^{p-1} (-p-1)! / prod_{i != j} (D_i.d)!  for p = D_j.d
Rational smooth_closed_form(const ToricData& data, const EffClass& d, int j) {
  long p = to_int64(d.pairings[j]);
  Rational c = factorial(-p - 1);
  if ((-p - 1) % 2 != 0) c = -c;
  for (int i = 0; i < data.mprime; ++i)
    if (i != j) c /= factorial(to_int64(d.pairings[i]));
  return c;
}

std::vector<Series> g_from_classes(const ToricData& data, const std::vector<EffClass>& classes,
                                   const Rational& order) {
  std::vector<CoeffExtraction> ext(classes.size());
  parallel_for(classes.size(), [&](std::size_t t) { ext[t] = z_extract(data, classes[t]); });
  Grading grading = data.y_grading();
  std::vector<Series> g(data.mprime, Series(grading, order));
  const bool cy = data.cy_covector.has_value();
  for (std::size_t t = 0; t < classes.size(); ++t) {
    const auto& d = classes[t];
    Monomial y = y_monomial(data, d);
    for (int j = 0; j < data.mprime; ++j) {
      bool hit = false;
      Rational c;
      if (j < data.m) {
        auto it = ext[t].z1_divisor_linear.find(j);
        if (it != ext[t].z1_divisor_linear.end()) hit = true, c = it->second;
        if (cy && hit != passes_g_smooth(data, d, j))
          fail_consistency(kModule, "g_series", "extraction disagrees with the smooth filter", to_string(d.pairings));
        if (hit && c != smooth_closed_form(data, d, j))
          fail_consistency(kModule, "g_series", "extraction disagrees with the smooth closed form",
                           to_string(d.pairings));
      } else {
        auto it = ext[t].z1_scalar_by_sector.find(data.fan.vector(j));
        if (it != ext[t].z1_scalar_by_sector.end()) hit = true, c = it->second;
        if (cy && hit != passes_g_orbi(data, d, j))
          fail_consistency(kModule, "g_series", "extraction disagrees with the orbifold filter",
                           to_string(d.pairings));
      }
      if (hit) g[j].add_term(y, c);
    }
  }
  for (const auto& s : g)
    if (s.constant_term() != 0) fail_consistency(kModule, "g_series", "g has a constant term");
  return g;
}

void require_mirror_data(const ToricData& data, const char* op) {
  if (!data.cy_covector) fail_validation(kModule, op, "fan is not Calabi-Yau");
  auto sf = verify_semi_fano(data);
  if (!sf.semi_fano)
    fail_validation(kModule, op, "fan is not semi-Fano", sf.violated ? nlohmann::json(*sf.violated).dump() : "");
}

}  // namespace

std::vector<Relation> MirrorMap::relations() const {
  std::vector<Relation> out;
  for (const auto& f : forward) {
    if (f.direction >= 0)
      out.push_back({f.target, exp_series(f.correction).shifted(Monomial::of(f.source))});
    else
      out.push_back({f.target, f.correction});
  }
  return out;
}

Grading MirrorMap::target_grading() const { return toricgw::target_grading(relations()); }

std::vector<Series> all_g_series(const ToricData& data, const Rational& order) {
  return g_from_classes(data, enumerate_effective(data, order), order);
}

Series g_series(const ToricData& data, int j, const Rational& order) {
  if (j < 0 || j >= data.mprime) fail_validation(kModule, "g_series", "vector index out of range", std::to_string(j));
  return all_g_series(data, order)[j];
}

MirrorMap toric_mirror_map(const ToricData& data, const Rational& order) {
  require_mirror_data(data, "toric_mirror_map");
  for (int j = data.m; j < data.mprime; ++j)
    for (int a : data.h2_directions)
      if (data.pairing(j, a) != 0)
        fail_validation(kModule, "toric_mirror_map", "extra divisor has a nonzero image in H2", std::to_string(j));
  MirrorMap mm;
  mm.order = order;
  mm.g = all_g_series(data, order);
  Grading grading = data.y_grading();
  for (int a : data.h2_directions) {
    Series c(grading, order);
    for (int j = 0; j < data.m; ++j)
      if (data.pairing(j, a) != 0) c = c + mm.g[j].scaled(data.pairing(j, a));
    mm.forward.push_back({data.q_var(a), data.y_var(a), a, -1, c});
  }
  for (int j = data.m; j < data.mprime; ++j) mm.forward.push_back({data.tau_var(j), Var(), -1, j, mm.g[j]});
  return mm;
}

Rational forward_order_for_inverse(const ToricData& data, const Rational& order) {
  Rational lmin = 1, lmax = 1;
  bool any = false;
  auto see = [&](const Rational& l) {
    lmin = any ? std::min(lmin, l) : l;
    lmax = any ? std::max(lmax, l) : l;
    any = true;
  };
  if (!data.h2_directions.empty()) see(1);
  for (int j = data.m; j < data.mprime; ++j) see(data.grade(data.dual(j).pairings));
  if (!any) return order;
  Rational work = order + std::max(Rational(0), Rational(1 - lmin));
  return std::max(order, Rational(work - 1 + lmax));
}

Assignment inverse_mirror_map(const MirrorMap& mm, const Rational& order) {
  return invert_map(mm.relations(), order);
}

MirrorMap relative_mirror_map(const CompactifiedData& cd, const Rational& order) {
  const auto& base = cd.base;
  const auto& bar = cd.bar;
  MirrorMap bm = toric_mirror_map(base, order);
  Grading grading = bar.y_grading();

  MirrorMap mm;
  mm.order = order;
  mm.g.assign(bar.mprime, Series(grading, order));
  for (int i = 0; i < base.mprime; ++i) mm.g[cd.bar_index[i]] = bm.g[i].regraded(grading);

  for (int a : bar.h2_directions) {
    Series c(grading, order);
    for (int j = 0; j < bar.m; ++j)
      if (bar.pairing(j, a) != 0) c = c + mm.g[j].scaled(bar.pairing(j, a));
    mm.forward.push_back({bar.q_var(a), bar.y_var(a), a, -1, c});
  }
  for (int j = bar.m; j < bar.mprime; ++j) mm.forward.push_back({bar.tau_var(j), Var(), -1, j, mm.g[j]});

  // Away from infinity the relations are those of the fan itself.
  for (const auto& f : bm.forward) {
    auto it = std::find_if(mm.forward.begin(), mm.forward.end(), [&](const auto& x) { return x.target == f.target; });
    if (it == mm.forward.end() || !(it->correction == f.correction.regraded(grading)))
      fail_consistency(kModule, "relative_mirror_map", "relation differs from the toric mirror map",
                       f.target.name());
  }
  // Case split at infinity: g_{i0} for a ray disk, sum_i c_{j0 i} g_i for a box disk.
  Series expected(grading, order);
  if (cd.disk.kind == DiskClass::Kind::Ray) {
    expected = mm.g[cd.bar_index[cd.disk.index]];
  } else {
    for (const auto& [i, c] : base.dual(cd.disk.index).coefficients)
      expected = expected + mm.g[cd.bar_index[i]].scaled(c);
  }
  for (const auto& f : mm.forward)
    if (f.direction == bar.infinity_direction && !(f.correction == expected))
      fail_consistency(kModule, "relative_mirror_map", "infinity relation does not match the disk class",
                       cd.disk.to_string());

  auto oracle = relative_ifunction_oracle(cd, order);
  for (int j = 0; j < bar.mprime; ++j)
    if (!(oracle.g[j] == mm.g[j]))
      fail_consistency(kModule, "relative_mirror_map", "g-series of the bar fan differs from the fan's",
                       bar.fan.label(j));
  for (const auto& f : mm.forward)
    if (!(oracle.z1_pieces.at(f.target) == f.correction))
      fail_consistency(kModule, "relative_mirror_map", "relation differs from the relative I-function",
                       f.target.name());
  return mm;
}

nlohmann::json to_json(const MirrorMap& mm) {
  nlohmann::json j;
  j["order"] = to_string(mm.order);
  auto g = nlohmann::json::array();
  for (std::size_t i = 0; i < mm.g.size(); ++i) g.push_back({{"index", i}, {"series", to_json(mm.g[i])}});
  j["g"] = g;
  auto fw = nlohmann::json::array();
  for (const auto& f : mm.forward) {
    nlohmann::json e;
    e["target"] = f.target.name();
    if (f.direction >= 0) {
      e["form"] = "log " + f.target.name() + " = log " + f.source.name() + " + correction";
      e["direction"] = f.direction;
    } else {
      e["form"] = f.target.name() + " = correction";
      e["vector"] = f.vector;
    }
    e["correction"] = to_json(f.correction);
    fw.push_back(e);
  }
  j["forward"] = fw;
  return j;
}

nlohmann::json to_json(const Assignment& inverse) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, s] : inverse) j[v.name()] = to_json(s);
  return j;
}

}  // namespace toricgw

#include "toricgw/classes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toricgw/error.hpp"
#include "toricgw/parallel.hpp"

namespace toricgw {

namespace {

const char* kModule = "class-enumerator";

bool is_nonneg_integer(const Rational& x) { return is_integer(x) && x >= 0; }
bool is_negative_integer(const Rational& x) { return is_integer(x) && x < 0; }

void walk(const std::vector<QVector>& gens, const std::vector<Rational>& grades, std::size_t pos,
          const Rational& budget, const QVector& current, bool nonzero, std::vector<QVector>& out) {
  if (pos == gens.size()) {
    if (nonzero) out.push_back(current);
    return;
  }
  QVector d = current;
  Rational used = 0;
  for (long k = 0; used <= budget; ++k, used += grades[pos]) {
    walk(gens, grades, pos + 1, budget - used, d, nonzero || k > 0, out);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += gens[pos][i];
  }
}

}  // namespace

std::vector<EffClass> enumerate_effective(const ToricData& data, const Rational& bound) {
  if (data.r == 0) return {};
  const std::size_t cones = data.minimal_anticones.size();
  std::vector<std::vector<QVector>> found(cones);
  parallel_for(cones, [&](std::size_t t) {
    const auto& gens = data.cone_generators[t];
    std::vector<Rational> grades;
    for (const auto& g : gens) {
      Rational gr = data.grade(g);
      if (gr <= 0)
        fail_validation(kModule, "enumerate_effective", "grading is not positive on an effective generator",
                        to_string(g));
      grades.push_back(gr);
    }
    std::vector<QVector> raw;
    walk(gens, grades, 0, bound, QVector(data.mprime, Rational(0)), false, raw);
    const auto& I = data.minimal_anticones[t];
    for (auto& d : raw) {
      bool ok = true;
      for (int i : I)
        if (!is_nonneg_integer(d[i])) ok = false;
      if (ok) found[t].push_back(std::move(d));
    }
  });
  std::set<QVector> unique;
  for (auto& f : found)
    for (auto& d : f) unique.insert(std::move(d));
  std::vector<EffClass> out;
  for (const auto& d : unique) {
    auto c = make_class(data, d);
    for (const auto& x : c.coords)
      if (x < 0)
        fail_validation(kModule, "enumerate_effective", "basis is not nef on an effective class; supply basis_p",
                        to_string(d));
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const EffClass& a, const EffClass& b) {
    if (a.grade != b.grade) return a.grade < b.grade;
    return a.pairings < b.pairings;
  });
  return out;
}

Rational c1_pairing(const ToricData& data, const EffClass& d) {
  Rational s = 0;
  for (int i = 0; i < data.m; ++i)
    for (int a : data.h2_directions) s += data.pairing(i, a) * d.coords[a];
  return s;
}

bool passes_g_smooth(const ToricData& data, const EffClass& d, int j) {
  if (!d.sector.is_zero() || c1_pairing(data, d) != 0) return false;
  if (!is_negative_integer(d.pairings[j])) return false;
  for (int i = 0; i < data.mprime; ++i) {
    if (i == j) continue;
    if (!is_nonneg_integer(d.pairings[i])) return false;
  }
  return true;
}

bool passes_g_orbi(const ToricData& data, const EffClass& d, int j) {
  if (d.sector.vector != data.fan.vector(j) || c1_pairing(data, d) != 0) return false;
  for (int i = 0; i < data.mprime; ++i)
    if (is_negative_integer(d.pairings[i])) return false;
  return true;
}

std::vector<EffClass> filter_g_smooth(const ToricData& data, const std::vector<EffClass>& classes, int j) {
  std::vector<EffClass> out;
  for (const auto& d : classes)
    if (passes_g_smooth(data, d, j)) out.push_back(d);
  return out;
}

std::vector<EffClass> filter_g_orbi(const ToricData& data, const std::vector<EffClass>& classes, int j) {
  std::vector<EffClass> out;
  for (const auto& d : classes)
    if (passes_g_orbi(data, d, j)) out.push_back(d);
  return out;
}

Monomial y_monomial(const ToricData& data, const EffClass& d) {
  std::vector<Monomial::Entry> e;
  for (int a = 0; a < data.r; ++a) e.emplace_back(data.y_var(a), d.coords[a]);
  return Monomial::from(e);
}

}  // namespace toricgw

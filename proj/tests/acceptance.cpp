// One line per acceptance criterion; exit status is nonzero when any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "toricgw/classes.hpp"
#include "toricgw/ifunction.hpp"
#include "toricgw/invariants.hpp"
#include "toricgw/syz.hpp"

using namespace toricgw;
using nlohmann::json;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void expect(bool c, const std::string& what) {
    if (!c && ok) {
      ok = false;
      why = what;
    }
  }
};

ToricData load(const std::string& name) { return kernel_data(load_stacky_fan(oracle::fan_path(name))); }

struct Compactification {
  std::string fan, bar, disk;
};
const std::vector<Compactification> kCompactified = {
    {"c3", "c3_bar", "ray:2"}, {"kp2", "kp2_bar", "ray:0"}, {"c3z3", "c3z3_bar", "box:3"}};
const std::vector<std::string> kFans = {"c3", "conifold", "kp2", "c3z3", "kp112"};

CompactifiedData compactify(const Compactification& c) {
  return validate_compactification(load(c.fan), load_stacky_fan(oracle::fan_path(c.bar)), DiskClass::parse(c.disk));
}

json run_cli(const std::vector<std::string>& args, int* status) {
  std::vector<const char*> argv = {"toricgw"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  *status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return *status == 0 ? json::parse(out.str()) : json();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Check kp2_potential() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  int status = 0;
  auto j = run_cli({"invariants", oracle::fan_path("kp2"), "--disk", "ray:0", "--order", "4"}, &status);
  double t = seconds_since(t0);
  c.expect(status == 0, "command failed");
  if (!c.ok) return c;
  auto s = series_from_json(j["potential"]["series"]);
  auto want = oracle::kp2_potential(4);
  c.expect(want[0] == 1 && want[1] == -2 && want[2] == 5 && want[3] == -32, "oracle prefix");
  c.expect(s.size() == 5, "term count");
  for (long k = 0; k <= 4; ++k)
    c.expect(s.coefficient(Monomial::of(Var::q(1), k)) == want[k], "coefficient of q^" + std::to_string(k));
  c.expect(t < 5, "runtime " + std::to_string(t) + " s");
  return c;
}

Check c3z3_potential() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  auto data = load("c3z3");
  auto dp = disk_potential(data, DiskClass::box(3), Rational(4, 3));
  auto table = extract_invariants(data, dp);
  double t = seconds_since(t0);
  auto want = oracle::c3z3_potential(4);
  c.expect(want[1] == 1 && want[4] == Rational(1, 648), "oracle values");
  c.expect(dp.series.size() == 2, "term count");
  for (long k = 0; k <= 4; ++k)
    c.expect(dp.series.coefficient(Monomial::of(Var::tau(3), k)) == want[k], "coefficient of tau^" + std::to_string(k));
  auto* e = table.find({}, {{3, 4}});
  c.expect(e && e->value == Rational(1, 27), "invariant (0, {v:4})");
  c.expect(t < 2, "runtime " + std::to_string(t) + " s");
  return c;
}

Check trivial_fans() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  auto c3 = load("c3");
  for (const auto& dp : disk_potentials(c3, all_disk_classes(c3), 10))
    c.expect(dp.series.size() == 1 && dp.series.constant_term() == 1, "C3 potential " + dp.disk.to_string());
  auto con = load("conifold");
  for (int order = 1; order <= 10; ++order)
    for (const auto& g : all_g_series(con, order)) c.expect(g.is_zero(), "conifold g at order " + std::to_string(order));
  for (const auto& dp : disk_potentials(con, all_disk_classes(con), 10))
    for (const auto& e : extract_invariants(con, dp).entries) {
      bool zero = std::all_of(e.alpha.begin(), e.alpha.end(), [](const Rational& a) { return a == 0; });
      c.expect(zero || e.value == 0, "conifold invariant away from zero");
    }
  double t = seconds_since(t0);
  c.expect(t < 1, "runtime " + std::to_string(t) + " s");
  return c;
}

Check relative_oracle() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& comp : kCompactified) {
    auto cd = compactify(comp);
    for (int bound = 1; bound <= 6; ++bound) {
      RelativeOracle r;
      try {
        r = relative_ifunction_oracle(cd, bound);
      } catch (const std::exception& e) {
        c.expect(false, comp.fan + ": " + e.what());
        return c;
      }
      Series want(cd.bar.y_grading(), bound);
      want.add_term(y_monomial(cd.bar, cd.d_infinity), 1);
      c.expect(r.z2_H0 == want, comp.fan + " H0 part at bound " + std::to_string(bound));
    }
    for (int order = 1; order <= 6; ++order)
      c.expect(compare_with_oracle(cd, order).match, comp.fan + " potential at order " + std::to_string(order));
  }
  double t = seconds_since(t0);
  c.expect(t < 30, "runtime " + std::to_string(t) + " s");
  return c;
}

Check round_trip() {
  Check c;
  const Rational order = 8;
  for (const auto& name : kFans) {
    auto data = load(name);
    auto mm = toric_mirror_map(data, forward_order_for_inverse(data, order));
    auto inv = inverse_mirror_map(mm, order);
    for (const auto& rel : mm.relations()) {
      auto back = substitute(rel.series, inv, order).truncated(order);
      auto id = Series::variable(mm.target_grading(), order, rel.target);
      c.expect(back.same_terms(id), name + " " + rel.target.name());
    }
  }
  for (const auto& comp : kCompactified) {
    auto cd = compactify(comp);
    auto rel = relative_mirror_map(cd, 6);
    auto toric = toric_mirror_map(cd.base, 6);
    for (const auto& f : toric.forward) {
      auto it = std::find_if(rel.forward.begin(), rel.forward.end(),
                             [&](const ForwardRelation& r) { return r.target == f.target; });
      if (it == rel.forward.end()) {
        c.expect(false, comp.fan + " relative map lacks " + f.target.name());
        continue;
      }
      Series restricted(cd.base.y_grading(), 6);
      for (const auto& [key, x] : it->correction.terms())
        if (key.monomial.exponent(Var::y(Var::kInfinity)) == 0) restricted.add_term(key.monomial, x);
      c.expect(restricted.same_terms(f.correction.truncated(6)), comp.fan + " restriction of " + f.target.name());
    }
  }
  return c;
}

Check closed_form() {
  Check c;
  int terms = 0;
  for (const auto& name : kFans) {
    auto data = load(name);
    auto classes = enumerate_effective(data, 6);
    for (int j = 0; j < data.m; ++j) {
      auto g = g_series(data, j, 6);
      for (const auto& d : classes) {
        bool smooth = is_integer(d.pairings[j]) && d.pairings[j] < 0;
        Rational den = 1;
        for (int i = 0; i < data.mprime && smooth; ++i) {
          if (i == j) continue;
          smooth = is_integer(d.pairings[i]) && d.pairings[i] >= 0;
          if (smooth) den *= factorial(to_int64(d.pairings[i]));
        }
        if (!smooth) continue;
        long k = -to_int64(d.pairings[j]);
        Rational want = factorial(k - 1) / den;
        if (k % 2 == 0) want = -want;
        c.expect(g.coefficient(y_monomial(data, d)) == want, name + " g_" + std::to_string(j) + " at " + to_string(d.pairings));
        ++terms;
      }
    }
  }
  c.expect(terms > 0, "no smooth terms found");
  return c;
}

Check properties() {
  Check c;
  std::mt19937 rng(42);
  Grading g({{Var::q(1), 1}, {Var::tau(3), Rational(1, 3)}});
  for (int t = 0; t < 100; ++t) {
    auto a = oracle::random_series(rng, g, 6, false);
    auto b = oracle::random_series(rng, g, 6, false);
    auto s = oracle::random_series(rng, g, 6, true);
    c.expect(oracle::ring_axioms_hold(a, b, s), "ring axioms");
    c.expect(oracle::exp_log_round_trip(s), "exp/log");
  }
  for (const auto& name : {"c3", "c3_bar", "conifold", "kp2", "kp2_bar", "c3z3", "c3z3_bar", "kp112", "kp112_bar"}) {
    auto fan = load_stacky_fan(oracle::fan_path(name));
    std::set<LatticeVector> got;
    for (const auto& b : box_elements(fan).elements) got.insert(b.vector);
    c.expect(got == oracle::brute_force_box(fan), std::string("box of ") + name);
    auto data = kernel_data(fan);
    if (data.r == 0 || data.r > 2) continue;
    std::set<QVector> cls;
    for (const auto& d : enumerate_effective(data, 4)) cls.insert(d.pairings);
    c.expect(cls == oracle::brute_force_keff(data, 4), std::string("K_eff of ") + name);
  }
  for (const auto& name : kFans) {
    auto data = load(name);
    for (int cone = 0; cone < static_cast<int>(data.fan.cones.size()); ++cone)
      c.expect(relations_hold(data, solve_coefficient_system(data, make_gauge(data, cone))), name + " SYZ relations");
  }
  auto kp2 = load("kp2");
  auto pots = disk_potentials(kp2, all_disk_classes(kp2), 4);
  auto base = mirror_potential(kp2, pots, make_gauge(kp2, 0), 4);
  for (int cone = 1; cone < 3; ++cone) {
    auto other = mirror_potential(kp2, pots, make_gauge(kp2, cone), 4);
    auto chi = gauge_character(kp2, base, other);
    c.expect(chi.has_value(), "gauge character");
    if (!chi) continue;
    for (int i = 0; i < kp2.mprime; ++i) {
      Rational pair = 0;
      for (int k = 0; k < kp2.n; ++k) pair += (*chi)[0][k] * static_cast<long>(kp2.fan.vector(i)[k]);
      c.expect(other.coefficients.exponents[i][0] == base.coefficients.exponents[i][0] + pair, "gauge covariance");
    }
  }
  return c;
}

Check determinism() {
  Check c;
  const std::string bin = oracle::cli_path();
  auto f = [](const std::string& n) { return oracle::fan_path(n); };
  const std::vector<std::string> commands = {
      "analyze " + f("kp112"),
      "mirror-map " + f("kp2") + " --order 5",
      "mirror-map " + f("c3z3") + " --bar " + f("c3z3_bar") + " --disk box:3 --order 2",
      "invariants " + f("kp2") + " --disk ray:0 --order 5",
      "invariants " + f("c3z3") + " --disk box:3 --order 10/3 --format text",
      "syz " + f("kp112") + " --order 3",
      "oracle " + f("kp2") + " --bar " + f("kp2_bar") + " --disk ray:0 --order 4",
  };
  for (const auto& cmd : commands) {
    int s1 = 0, s2 = 0;
    auto a = oracle::run_command(bin + " " + cmd + " 2>&1", &s1);
    auto b = oracle::run_command(bin + " " + cmd + " 2>&1", &s2);
    c.expect(s1 == 0 && s2 == 0, "exit status of " + cmd);
    c.expect(!a.empty() && a == b, "output of " + cmd);
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"K_P2 disk potential", kp2_potential},
      {"C3/Z3 orbifold potential", c3z3_potential},
      {"trivial fans", trivial_fans},
      {"relative I-function oracle", relative_oracle},
      {"mirror map round trip", round_trip},
      {"smooth closed form", closed_form},
      {"property suites", properties},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    try {
      c = criteria[k].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = e.what();
    }
    std::cout << "criterion " << k + 1 << " (" << criteria[k].first << "): " << (c.ok ? "PASS" : "FAIL");
    if (!c.ok) std::cout << " -- " << c.why;
    std::cout << std::endl;
    failures += c.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

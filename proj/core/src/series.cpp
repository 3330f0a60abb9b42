#include "toricgw/series.hpp"

#include <algorithm>
#include <set>

#include "toricgw/error.hpp"
#include "toricgw/linalg.hpp"

namespace toricgw {

namespace {

const char* kModule = "series-engine";

std::shared_ptr<const Grading> empty_grading() {
  static const auto g = std::make_shared<const Grading>();
  return g;
}

void require_same_grading(const Series& a, const Series& b, const char* op) {
  if (a.grading_ptr() != b.grading_ptr() && !(a.grading() == b.grading()))
    fail_validation(kModule, op, "grading mismatch");
}

std::string exponent_text(const Rational& e) {
  if (is_integer(e) && e >= 0) return to_string(e);
  return "(" + to_string(e) + ")";
}

}  // namespace

std::string Var::name() const {
  std::string prefix;
  switch (kind) {
    case VarKind::Y: prefix = "y"; break;
    case VarKind::Q: prefix = "q"; break;
    case VarKind::Tau: prefix = "tau"; break;
    case VarKind::Z: prefix = "z"; break;
  }
  if (index == kInfinity) return prefix + "_inf";
  return prefix + std::to_string(index);
}

Var Var::parse(std::string_view name) {
  Var v;
  std::string_view rest;
  if (name.rfind("tau", 0) == 0) {
    v.kind = VarKind::Tau;
    rest = name.substr(3);
  } else if (!name.empty() && (name[0] == 'y' || name[0] == 'q' || name[0] == 'z')) {
    v.kind = name[0] == 'y' ? VarKind::Y : name[0] == 'q' ? VarKind::Q : VarKind::Z;
    rest = name.substr(1);
  } else {
    fail_validation(kModule, "parse_variable", "unknown variable", std::string(name));
  }
  if (rest == "_inf") {
    v.index = kInfinity;
    return v;
  }
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail_validation(kModule, "parse_variable", "unknown variable", std::string(name));
  v.index = std::stoi(std::string(rest));
  return v;
}

Monomial Monomial::of(Var v, const Rational& e) { return from({{v, e}}); }

Monomial Monomial::from(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Monomial m;
  for (auto& [v, e] : entries) {
    if (!m.entries_.empty() && m.entries_.back().first == v)
      m.entries_.back().second += e;
    else
      m.entries_.emplace_back(v, e);
  }
  std::erase_if(m.entries_, [](const Entry& x) { return x.second == 0; });
  return m;
}

Rational Monomial::exponent(Var v) const {
  for (const auto& [w, e] : entries_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  auto a = entries_.begin(), b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      Rational e = a->second + b->second;
      if (e != 0) out.entries_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::pow(const Rational& e) const {
  Monomial out;
  if (e == 0) return out;
  for (const auto& [v, x] : entries_) out.entries_.emplace_back(v, x * e);
  return out;
}

std::string Monomial::to_string() const {
  if (entries_.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : entries_) {
    if (!out.empty()) out += "*";
    out += v.name();
    if (e != 1) out += "^" + exponent_text(e);
  }
  return out;
}

Grading::Grading(std::map<Var, Rational> weights) : weights_(std::move(weights)) {
  for (const auto& [v, w] : weights_)
    if (w <= 0) fail_validation(kModule, "grading", "weights must be positive", v.name());
}

Rational Grading::weight(Var v) const {
  auto it = weights_.find(v);
  if (it == weights_.end()) fail_validation(kModule, "grade", "variable outside the grading", v.name());
  return it->second;
}

Rational Grading::grade(const Monomial& m) const {
  Rational g = 0;
  for (const auto& [v, e] : m.entries()) g += weight(v) * e;
  return g;
}

Series::Series() : grading_(empty_grading()), order_(0) {}

Series::Series(Grading grading, Rational order)
    : grading_(std::make_shared<const Grading>(std::move(grading))), order_(std::move(order)) {}

Series::Series(std::shared_ptr<const Grading> grading, Rational order)
    : grading_(std::move(grading)), order_(std::move(order)) {}

Series Series::constant(const Series& like, const Rational& c) {
  Series s(like.grading_, like.order_);
  s.add_term(Monomial(), c);
  return s;
}

Series Series::constant(Grading grading, Rational order, const Rational& c) {
  Series s(std::move(grading), std::move(order));
  s.add_term(Monomial(), c);
  return s;
}

Series Series::monomial(Grading grading, Rational order, const Monomial& m, const Rational& c) {
  Series s(std::move(grading), std::move(order));
  s.add_term(m, c);
  return s;
}

Series Series::variable(Grading grading, Rational order, Var v) {
  return monomial(std::move(grading), std::move(order), Monomial::of(v));
}

Rational Series::coefficient(const Monomial& m) const {
  auto it = terms_.find(Key{grading_->grade(m), m});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> Series::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.grade;
}

void Series::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  Rational g = grading_->grade(m);
  if (g < 0) fail_validation(kModule, "add_term", "monomial of negative grade", m.to_string());
  if (g == 0 && !m.is_one())
    fail_validation(kModule, "add_term", "non-constant monomial of grade zero", m.to_string());
  if (g > order_) return;
  Key k{g, m};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Series Series::truncated(const Rational& order) const {
  Series out(grading_, std::min(order, order_));
  for (const auto& [k, c] : terms_) {
    if (k.grade > out.order_) break;
    out.terms_.emplace(k, c);
  }
  return out;
}

Series Series::regraded(Grading grading) const {
  Series out(std::move(grading), order_);
  for (const auto& [k, c] : terms_) {
    if (out.grading().grade(k.monomial) != k.grade)
      fail_validation(kModule, "regrade", "gradings disagree on a stored monomial", k.monomial.to_string());
    out.terms_.emplace(k, c);
  }
  return out;
}

Series Series::scaled(const Rational& c) const {
  Series out(grading_, order_);
  if (c == 0) return out;
  for (const auto& [k, x] : terms_) out.terms_.emplace(k, x * c);
  return out;
}

Series Series::shifted(const Monomial& m, const Rational& c) const {
  Series out(grading_, order_ + grading_->grade(m));
  if (c == 0) return out;
  for (const auto& [k, x] : terms_) out.add_term(k.monomial * m, x * c);
  return out;
}

Series Series::operator+(const Series& o) const {
  require_same_grading(*this, o, "add");
  Series out(grading_, std::min(order_, o.order_));
  for (const auto* src : {this, &o})
    for (const auto& [k, c] : src->terms_) {
      if (k.grade > out.order_) break;
      auto [it, inserted] = out.terms_.emplace(k, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  return out;
}

Series Series::operator-(const Series& o) const { return *this + o.scaled(-1); }

Series Series::operator*(const Series& o) const {
  return mul_to(*this, o, std::min(order_, o.order_));
}

bool Series::operator==(const Series& o) const {
  return order_ == o.order_ && grading() == o.grading() && terms_ == o.terms_;
}

bool Series::same_terms(const Series& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (!(a->first.monomial == b->first.monomial) || a->second != b->second) return false;
  return true;
}

std::string Series::to_text() const {
  std::string out;
  for (const auto& [k, c] : terms_) {
    Rational mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (k.monomial.is_one()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += k.monomial.to_string();
    }
  }
  if (out.empty()) out = "0";
  return out + " + O(grade > " + to_string(order_) + ")";
}

Series add(const Series& s, const Series& t) { return s + t; }
Series mul(const Series& s, const Series& t) { return s * t; }

Series mul_to(const Series& s, const Series& t, const Rational& order) {
  require_same_grading(s, t, "mul");
  Series out(s.grading_ptr(), order);
  std::map<Series::Key, Rational> acc;
  for (const auto& [ka, ca] : s.terms()) {
    if (ka.grade > order) break;
    for (const auto& [kb, cb] : t.terms()) {
      Rational g = ka.grade + kb.grade;
      if (g > order) break;
      acc[Series::Key{g, ka.monomial * kb.monomial}] += ca * cb;
    }
  }
  for (const auto& [k, c] : acc)
    if (c != 0) out.add_term(k.monomial, c);
  return out;
}

Series exp_series(const Series& s) {
  if (s.constant_term() != 0) fail_validation(kModule, "exp_series", "nonzero constant term");
  Series result = Series::constant(s, 1);
  Series term = result;
  for (long k = 1;; ++k) {
    term = (term * s).scaled(Rational(1, k));
    if (term.is_zero()) break;
    result = result + term;
  }
  return result;
}

Series log_one_plus(const Series& s) {
  if (s.constant_term() != 0) fail_validation(kModule, "log_one_plus", "nonzero constant term");
  Series result(s.grading_ptr(), s.order());
  Series power = s;
  for (long k = 1; !power.is_zero(); ++k) {
    result = result + power.scaled(Rational(k % 2 ? 1 : -1, k));
    power = power * s;
  }
  return result;
}

namespace {

struct Leading {
  Rational coefficient;
  Monomial monomial;
  Rational grade;
  Series log_unit;  // log(s / (c m)), order = order(s) - grade
};

Leading factor_leading(const Series& s, const char* op) {
  auto v = s.valuation();
  if (!v) fail_validation(kModule, op, "cannot factor a zero series");
  auto it = s.terms().begin();
  auto next = std::next(it);
  if (next != s.terms().end() && next->first.grade == *v)
    fail_validation(kModule, op, "no unique lowest-grade term", s.to_text());
  Leading lead{it->second, it->first.monomial, *v, Series(s.grading_ptr(), s.order() - *v)};
  Monomial inv = lead.monomial.pow(-1);
  Series h(s.grading_ptr(), s.order() - *v);
  for (auto t = next; t != s.terms().end(); ++t) h.add_term(t->first.monomial * inv, t->second / lead.coefficient);
  lead.log_unit = log_one_plus(h);
  return lead;
}

Rational exact_power(const Rational& c, const Rational& e, const char* op) {
  auto p = rational_power(c, e);
  if (!p) fail_validation(kModule, op, "coefficient power is irrational", to_string(c) + "^" + to_string(e));
  return *p;
}

}  // namespace

Series pow_series(const Series& s, const Rational& alpha) {
  if (is_integer(alpha) && alpha >= 0) {
    Series result = Series::constant(s, 1);
    Series base = s;
    Integer k = alpha.get_num();
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }
  if (s.is_zero()) {
    if (alpha > 0) return Series(s.grading_ptr(), s.order());
    fail_validation(kModule, "pow_series", "zero series to a non-positive power");
  }
  auto lead = factor_leading(s, "pow_series");
  Series unit = exp_series(lead.log_unit.scaled(alpha));
  return unit.shifted(lead.monomial.pow(alpha), exact_power(lead.coefficient, alpha, "pow_series"));
}

Series substitute(const Series& s, const Assignment& assignment, std::optional<Rational> order) {
  std::shared_ptr<const Grading> target;
  for (const auto& [v, img] : assignment) {
    if (!target)
      target = img.grading_ptr();
    else if (!(img.grading() == *target))
      fail_validation(kModule, "substitute", "assigned series use different gradings");
  }
  if (!target) {
    for (const auto& [k, c] : s.terms())
      if (!k.monomial.is_one()) fail_validation(kModule, "substitute", "unassigned variable", k.monomial.to_string());
    return s;
  }

  struct Info {
    const Series* image = nullptr;
    std::optional<Rational> val;
    bool needs_factor = false;
    std::optional<Leading> lead;
    std::map<long, Series> powers;
  };
  std::map<Var, Info> info;
  for (const auto& [k, c] : s.terms())
    for (const auto& [v, e] : k.monomial.entries()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) fail_validation(kModule, "substitute", "unassigned variable", v.name());
      auto& in = info[v];
      if (!in.image) {
        in.image = &it->second;
        in.val = it->second.valuation();
        if (in.val && *in.val < s.grading().weight(v))
          fail_validation(kModule, "substitute", "image grade below source grade", v.name());
      }
      if (!is_integer(e) || e < 0) in.needs_factor = true;
    }
  for (auto& [v, in] : info)
    if (in.needs_factor) {
      if (!in.val || *in.val != s.grading().weight(v))
        fail_validation(kModule, "substitute", "rational exponent needs a grade-preserving image", v.name());
      in.lead = factor_leading(*in.image, "substitute");
    }

  Rational W = order ? std::min(*order, s.order()) : s.order();
  for (const auto& [k, c] : s.terms()) {
    if (k.monomial.is_one()) continue;
    Rational g = 0;
    std::optional<Rational> slack;
    bool vanishes = false;
    for (const auto& [v, e] : k.monomial.entries()) {
      const auto& in = info[v];
      if (!in.val) {
        vanishes = true;
        W = std::min(W, in.image->order());
        continue;
      }
      g += e * *in.val;
      Rational sl = in.image->order() - *in.val;
      slack = slack ? std::min(*slack, sl) : sl;
    }
    if (!vanishes && slack) W = std::min(W, Rational(g + *slack));
  }

  Series result(target, W);
  for (const auto& [k, c] : s.terms()) {
    if (k.monomial.is_one()) {
      result.add_term(Monomial(), c);
      continue;
    }
    bool unit_path = false, vanishes = false;
    for (const auto& [v, e] : k.monomial.entries()) {
      if (!info[v].val) vanishes = true;
      if (!is_integer(e) || e < 0) unit_path = true;
    }
    if (vanishes) continue;
    Series image(target, W);
    if (unit_path) {
      Rational g = 0, coeff = 1;
      Monomial mono;
      for (const auto& [v, e] : k.monomial.entries()) {
        auto& in = info[v];
        if (!in.lead) in.lead = factor_leading(*in.image, "substitute");
        g += e * in.lead->grade;
        coeff *= exact_power(in.lead->coefficient, e, "substitute");
        mono = mono * in.lead->monomial.pow(e);
      }
      if (g > W) continue;
      Series log_sum(target, W - g);
      for (const auto& [v, e] : k.monomial.entries())
        log_sum = log_sum + info[v].lead->log_unit.truncated(W - g).scaled(e);
      image = exp_series(log_sum).shifted(mono, coeff);
    } else {
      image = Series::constant(Series(target, W), 1);
      for (const auto& [v, e] : k.monomial.entries()) {
        auto& in = info[v];
        long n = to_int64(e);
        auto& pw = in.powers;
        if (pw.empty()) pw.emplace(1, in.image->truncated(W));
        for (long j = static_cast<long>(pw.size()) + 1; j <= n; ++j)
          pw.emplace(j, mul_to(pw.at(j - 1), *in.image, W));
        image = mul_to(image, pw.at(n), W);
      }
    }
    result = result + image.truncated(W).scaled(c);
  }
  return result;
}

namespace {

struct LeadData {
  std::vector<Var> sources;
  std::vector<Rational> coeff;
  std::vector<Monomial> lead;
  std::vector<Rational> lead_grade;
  QMatrix e_inverse;
};

LeadData leading_data(const std::vector<Relation>& relations) {
  LeadData d;
  const auto& grading = relations.front().series.grading();
  for (const auto& [v, w] : grading.weights()) d.sources.push_back(v);
  const std::size_t k = d.sources.size();
  if (relations.size() != k)
    fail_validation(kModule, "invert_map", "non-triangular system: relation count differs from source count");
  std::set<Var> targets;
  QMatrix E(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const auto& F = relations[a].series;
    if (!(F.grading() == grading)) fail_validation(kModule, "invert_map", "relations use different gradings");
    if (!targets.insert(relations[a].target).second)
      fail_validation(kModule, "invert_map", "repeated target variable", relations[a].target.name());
    auto v = F.valuation();
    if (!v || *v == 0)
      fail_validation(kModule, "invert_map", "non-triangular system: relation has no positive leading term",
                      relations[a].target.name());
    auto it = F.terms().begin();
    auto nx = std::next(it);
    if (nx != F.terms().end() && nx->first.grade == *v)
      fail_validation(kModule, "invert_map", "non-triangular system: leading term is not unique",
                      relations[a].target.name());
    d.coeff.push_back(it->second);
    d.lead.push_back(it->first.monomial);
    d.lead_grade.push_back(*v);
    for (std::size_t b = 0; b < k; ++b) E(a, b) = it->first.monomial.exponent(d.sources[b]);
  }
  auto inv = inverse(E);
  if (!inv) fail_validation(kModule, "invert_map", "non-triangular system: leading exponents are dependent");
  d.e_inverse = *inv;
  return d;
}

}  // namespace

Grading target_grading(const std::vector<Relation>& relations) {
  std::map<Var, Rational> w;
  if (relations.empty()) return Grading(w);
  auto d = leading_data(relations);
  for (std::size_t a = 0; a < relations.size(); ++a) w[relations[a].target] = d.lead_grade[a];
  return Grading(w);
}

Assignment invert_map(const std::vector<Relation>& relations, const Rational& order) {
  if (relations.empty()) return {};
  auto d = leading_data(relations);
  const std::size_t k = d.sources.size();
  const auto& src = relations.front().series.grading();
  auto tgrading = std::make_shared<const Grading>(target_grading(relations));

  std::vector<Monomial> lead_y(k);
  std::vector<Rational> kappa(k, Rational(1)), g(k);
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<Monomial::Entry> ent;
    for (std::size_t a = 0; a < k; ++a) {
      const Rational& x = d.e_inverse(b, a);
      if (x == 0) continue;
      ent.emplace_back(relations[a].target, x);
      kappa[b] *= exact_power(d.coeff[a], -x, "invert_map");
    }
    lead_y[b] = Monomial::from(ent);
    g[b] = src.weight(d.sources[b]);
    if (tgrading->grade(lead_y[b]) != g[b])
      fail_consistency(kModule, "invert_map", "leading monomial does not preserve grade", d.sources[b].name());
  }

  std::vector<Series> logs;
  for (std::size_t a = 0; a < k; ++a) {
    const auto& F = relations[a].series;
    Series h = F.shifted(d.lead[a].pow(-1), 1 / d.coeff[a]) - Series::constant(F.grading(), F.order(), 1);
    logs.push_back(log_one_plus(h.truncated(F.order() - d.lead_grade[a])));
  }

  Rational gmax = *std::max_element(g.begin(), g.end());
  Rational lmin = *std::min_element(d.lead_grade.begin(), d.lead_grade.end());
  Rational work = order + std::max(Rational(0), Rational(gmax - lmin));

  std::vector<Series> W;
  for (std::size_t b = 0; b < k; ++b) W.push_back(Series::constant(Series(tgrading, work - g[b]), 1));
  auto assemble = [&](const std::vector<Series>& w) {
    Assignment y;
    for (std::size_t b = 0; b < k; ++b) y.emplace(d.sources[b], w[b].shifted(lead_y[b], kappa[b]));
    return y;
  };

  Integer steps = floor_q(work / lmin) + 3;
  bool stable = false;
  for (Integer it = 0; it <= steps; ++it) {
    auto y = assemble(W);
    std::vector<Series> logs_y;
    for (std::size_t a = 0; a < k; ++a) logs_y.push_back(substitute(logs[a], y));
    std::vector<Series> next;
    for (std::size_t b = 0; b < k; ++b) {
      Series sum(tgrading, work - g[b]);
      for (std::size_t a = 0; a < k; ++a)
        if (d.e_inverse(b, a) != 0) sum = sum + logs_y[a].scaled(-d.e_inverse(b, a));
      next.push_back(exp_series(sum));
    }
    stable = true;
    for (std::size_t b = 0; b < k; ++b)
      if (!(next[b] == W[b])) stable = false;
    W = std::move(next);
    if (stable) break;
  }
  if (!stable) fail_validation(kModule, "invert_map", "non-triangular system: iteration did not stabilize");

  auto y = assemble(W);
  for (std::size_t b = 0; b < k; ++b)
    if (y.at(d.sources[b]).order() < order)
      fail_validation(kModule, "invert_map", "relations are not known to the requested order",
                      d.sources[b].name());
  for (std::size_t a = 0; a < k; ++a) {
    Series back = substitute(relations[a].series, y);
    if (back.order() < order)
      fail_validation(kModule, "invert_map", "relations are not known to the requested order",
                      relations[a].target.name());
    Series expected = Series::monomial(*tgrading, order, Monomial::of(relations[a].target));
    if (!(back.truncated(order) == expected))
      fail_consistency(kModule, "invert_map", "round trip is not the identity", relations[a].target.name());
  }
  Assignment out;
  for (auto& [v, s] : y) out.emplace(v, s.truncated(order));
  return out;
}

nlohmann::json to_json(const Grading& g) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, w] : g.weights()) j[v.name()] = to_string(w);
  return j;
}

nlohmann::json to_json(const Monomial& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, e] : m.entries()) j[v.name()] = to_string(e);
  return j;
}

nlohmann::json to_json(const Series& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back({{"exponents", to_json(k.monomial)}, {"coeff", to_string(c)}});
  return {{"grading", to_json(s.grading())}, {"order", to_string(s.order())}, {"terms", terms}};
}

Series series_from_json(const nlohmann::json& j) {
  try {
    std::map<Var, Rational> w;
    for (const auto& [name, value] : j.at("grading").items()) w[Var::parse(name)] = parse_rational(value.get<std::string>());
    Series s(Grading(std::move(w)), parse_rational(j.at("order").get<std::string>()));
    for (const auto& t : j.at("terms")) {
      std::vector<Monomial::Entry> ent;
      for (const auto& [name, value] : t.at("exponents").items())
        ent.emplace_back(Var::parse(name), parse_rational(value.get<std::string>()));
      s.add_term(Monomial::from(ent), parse_rational(t.at("coeff").get<std::string>()));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail_validation(kModule, "parse_series", "malformed series document", e.what());
  }
}

}  // namespace toricgw

#include "toricgw/fan.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "toricgw/error.hpp"
#include "toricgw/linalg.hpp"

namespace toricgw {

namespace {

const char* kModule = "fan-core";

std::string cone_text(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

QMatrix cone_matrix(const StackyFan& fan, const IndexSet& cone) {
  QMatrix b(fan.rank, cone.size());
  for (std::size_t k = 0; k < cone.size(); ++k)
    for (int i = 0; i < fan.rank; ++i) b(i, k) = Rational(static_cast<long>(fan.vector(cone[k])[i]));
  return b;
}

// Exists h with h.b >= 1 on S\T, h.b <= -1 on T\S, h.b = 0 on S and T.
bool meet_in_common_face(const StackyFan& fan, const IndexSet& s, const IndexSet& t) {
  std::vector<LinearConstraint> cons;
  auto row = [&](int i) { return to_qvector(fan.vector(i)); };
  for (int i : s) {
    bool shared = std::binary_search(t.begin(), t.end(), i);
    cons.push_back({row(i), shared ? LinearConstraint::Sense::Equal : LinearConstraint::Sense::GreaterEqual,
                    Rational(shared ? 0 : 1)});
  }
  for (int i : t)
    if (!std::binary_search(s.begin(), s.end(), i))
      cons.push_back({row(i), LinearConstraint::Sense::LessEqual, Rational(-1)});
  return feasible_point(fan.rank, cons).has_value();
}

void validate(const StackyFan& fan) {
  const int n = fan.rank;
  if (n <= 0) fail_validation(kModule, "parse_stacky_fan", "rank must be a positive integer");
  if (fan.rays.empty()) fail_validation(kModule, "parse_stacky_fan", "fan has no rays");
  if (fan.cones.empty()) fail_validation(kModule, "parse_stacky_fan", "fan has no cones");

  std::set<LatticeVector> seen;
  for (int i = 0; i < fan.num_vectors(); ++i) {
    const auto& b = fan.vector(i);
    bool is_ray = i < fan.num_rays();
    std::string what = (is_ray ? "ray " : "extra vector ") + std::to_string(i);
    if (static_cast<int>(b.size()) != n)
      fail_validation(kModule, "parse_stacky_fan", what + " has wrong dimension", to_string(b));
    if (gcd_of(b) == 0) fail_validation(kModule, "parse_stacky_fan", what + " is zero");
    if (is_ray && gcd_of(b) != 1)
      fail_validation(kModule, "parse_stacky_fan", what + " is not primitive", to_string(b));
    if (is_ray && !seen.insert(b).second)
      fail_validation(kModule, "parse_stacky_fan", "duplicate ray", to_string(b));
  }
  std::set<LatticeVector> extras;
  for (const auto& e : fan.extra_vectors)
    if (!extras.insert(e).second)
      fail_validation(kModule, "parse_stacky_fan", "duplicate extra vector", to_string(e));

  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    const auto& cone = fan.cones[c];
    if (cone.empty()) fail_validation(kModule, "parse_stacky_fan", "empty cone", std::to_string(c));
    for (std::size_t k = 0; k < cone.size(); ++k) {
      if (cone[k] < 0 || cone[k] >= fan.num_rays())
        fail_validation(kModule, "parse_stacky_fan", "cone references an unknown ray", cone_text(cone));
      if (k && cone[k] == cone[k - 1])
        fail_validation(kModule, "parse_stacky_fan", "cone repeats a ray", cone_text(cone));
    }
    if (rank(cone_matrix(fan, cone)) != cone.size())
      fail_validation(kModule, "parse_stacky_fan", "cone is not simplicial", cone_text(cone));
  }
  for (std::size_t a = 0; a < fan.cones.size(); ++a)
    for (std::size_t b = a + 1; b < fan.cones.size(); ++b)
      if (!meet_in_common_face(fan, fan.cones[a], fan.cones[b]))
        fail_validation(kModule, "parse_stacky_fan", "cones do not meet in a common face",
                        cone_text(fan.cones[a]) + " " + cone_text(fan.cones[b]));

  for (std::size_t j = 0; j < fan.extra_vectors.size(); ++j)
    if (!fan.locate(to_qvector(fan.extra_vectors[j])))
      fail_validation(kModule, "parse_stacky_fan", "extra vector lies outside the support",
                      to_string(fan.extra_vectors[j]));

  std::vector<LatticeVector> all(fan.rays);
  all.insert(all.end(), fan.extra_vectors.begin(), fan.extra_vectors.end());
  auto snf = smith_normal_form(columns_matrix(all, n));
  bool generates = snf.rank == static_cast<std::size_t>(n);
  for (const auto& s : snf.invariant_factors())
    if (s != 1) generates = false;
  if (!generates) fail_validation(kModule, "parse_stacky_fan", "vectors do not generate the lattice");

  if (!fan.labels.empty() && static_cast<int>(fan.labels.size()) != fan.num_vectors())
    fail_validation(kModule, "parse_stacky_fan", "labels must name every ray and extra vector");
  if (fan.basis_p) {
    for (const auto& row : *fan.basis_p)
      if (static_cast<int>(row.size()) != fan.num_vectors())
        fail_validation(kModule, "parse_stacky_fan", "basis_p rows need one entry per vector");
  }
}

LatticeVector read_vector(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) fail_validation(kModule, "parse_stacky_fan", what + " must be an array");
  LatticeVector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail_validation(kModule, "parse_stacky_fan", what + " must hold integers");
    v.push_back(x.get<std::int64_t>());
  }
  return v;
}

}  // namespace

const LatticeVector& StackyFan::vector(int i) const {
  if (i < num_rays()) return rays[i];
  return extra_vectors[i - num_rays()];
}

std::string StackyFan::label(int i) const {
  if (!labels.empty()) return labels[i];
  return (i < num_rays() ? "b" : "v") + std::to_string(i);
}

bool StackyFan::is_cone(const IndexSet& s) const {
  for (const auto& c : cones)
    if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
  return false;
}

std::vector<IndexSet> StackyFan::maximal_cones() const {
  std::vector<IndexSet> out;
  for (std::size_t a = 0; a < cones.size(); ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < cones.size() && maximal; ++b)
      if (a != b && cones[b].size() > cones[a].size() &&
          std::includes(cones[b].begin(), cones[b].end(), cones[a].begin(), cones[a].end()))
        maximal = false;
    if (maximal && std::find(out.begin(), out.end(), cones[a]) == out.end()) out.push_back(cones[a]);
  }
  return out;
}

std::optional<std::pair<int, QVector>> StackyFan::locate(const QVector& point) const {
  for (std::size_t c = 0; c < cones.size(); ++c) {
    auto coeffs = solve(cone_matrix(*this, cones[c]), point);
    if (!coeffs) continue;
    if (std::all_of(coeffs->begin(), coeffs->end(), [](const Rational& x) { return x >= 0; }))
      return std::make_pair(static_cast<int>(c), *coeffs);
  }
  return std::nullopt;
}

StackyFan make_stacky_fan(int rank, std::vector<LatticeVector> rays, std::vector<IndexSet> cones,
                          std::vector<LatticeVector> extra_vectors, std::vector<std::string> labels,
                          std::optional<std::vector<QVector>> basis_p) {
  StackyFan fan;
  fan.rank = rank;
  fan.rays = std::move(rays);
  fan.cones = std::move(cones);
  for (auto& c : fan.cones) std::sort(c.begin(), c.end());
  fan.extra_vectors = std::move(extra_vectors);
  fan.labels = std::move(labels);
  fan.basis_p = std::move(basis_p);
  validate(fan);
  return fan;
}

StackyFan parse_stacky_fan(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    fail_validation(kModule, "parse_stacky_fan", "malformed document", e.what());
  }
  if (!j.is_object()) fail_validation(kModule, "parse_stacky_fan", "document must be an object");
  static const std::set<std::string> known = {"rank", "rays", "cones", "extra_vectors",
                                              "basis_p", "labels", "name", "description"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) fail_validation(kModule, "parse_stacky_fan", "unknown field", key);
  if (!j.contains("rank") || !j["rank"].is_number_integer())
    fail_validation(kModule, "parse_stacky_fan", "missing integer field", "rank");
  if (!j.contains("rays") || !j["rays"].is_array())
    fail_validation(kModule, "parse_stacky_fan", "missing array field", "rays");
  if (!j.contains("cones") || !j["cones"].is_array())
    fail_validation(kModule, "parse_stacky_fan", "missing array field", "cones");

  std::vector<LatticeVector> rays, extras;
  for (const auto& r : j["rays"]) rays.push_back(read_vector(r, "ray"));
  std::vector<IndexSet> cones;
  for (const auto& c : j["cones"]) {
    auto v = read_vector(c, "cone");
    cones.emplace_back(v.begin(), v.end());
  }
  if (j.contains("extra_vectors"))
    for (const auto& e : j["extra_vectors"]) extras.push_back(read_vector(e, "extra vector"));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) fail_validation(kModule, "parse_stacky_fan", "labels must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) fail_validation(kModule, "parse_stacky_fan", "labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  std::optional<std::vector<QVector>> basis;
  if (j.contains("basis_p")) {
    if (!j["basis_p"].is_array()) fail_validation(kModule, "parse_stacky_fan", "basis_p must be an array");
    basis.emplace();
    for (const auto& row : j["basis_p"]) {
      if (!row.is_array()) fail_validation(kModule, "parse_stacky_fan", "basis_p rows must be arrays");
      QVector q;
      for (const auto& x : row) {
        if (x.is_string())
          q.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
          q.emplace_back(static_cast<long>(x.get<std::int64_t>()));
        else
          fail_validation(kModule, "parse_stacky_fan", "basis_p entries must be rationals");
      }
      basis->push_back(std::move(q));
    }
  }
  return make_stacky_fan(static_cast<int>(j["rank"].get<std::int64_t>()), std::move(rays),
                         std::move(cones), std::move(extras), std::move(labels), std::move(basis));
}

StackyFan load_stacky_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_validation(kModule, "parse_stacky_fan", "cannot read fan file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_stacky_fan(ss.str());
}

nlohmann::json to_json(const StackyFan& fan) {
  nlohmann::json j;
  j["rank"] = fan.rank;
  j["rays"] = fan.rays;
  j["cones"] = fan.cones;
  if (!fan.extra_vectors.empty()) j["extra_vectors"] = fan.extra_vectors;
  if (!fan.labels.empty()) j["labels"] = fan.labels;
  if (fan.basis_p) {
    auto rows = nlohmann::json::array();
    for (const auto& row : *fan.basis_p) {
      auto r = nlohmann::json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      rows.push_back(r);
    }
    j["basis_p"] = rows;
  }
  return j;
}

BoxElement make_box_element(const StackyFan& fan, const std::vector<std::pair<int, Rational>>& coeffs) {
  BoxElement b;
  QVector v(fan.rank, Rational(0));
  for (const auto& [i, c] : coeffs) {
    if (c == 0) continue;
    if (c < 0 || c >= 1)
      fail_consistency(kModule, "box_elements", "box coefficient outside [0,1)", to_string(c));
    b.cone.push_back(i);
    b.coefficients.emplace_back(i, c);
    b.age += c;
    for (int k = 0; k < fan.rank; ++k) v[k] += c * static_cast<long>(fan.vector(i)[k]);
  }
  std::vector<std::size_t> order(b.cone.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return b.cone[x] < b.cone[y]; });
  IndexSet cone;
  std::vector<std::pair<int, Rational>> sorted;
  for (auto k : order) {
    cone.push_back(b.cone[k]);
    sorted.push_back(b.coefficients[k]);
  }
  b.cone = std::move(cone);
  b.coefficients = std::move(sorted);
  for (auto& x : v) b.vector.push_back(to_int64(x));
  return b;
}

BoxReport box_elements(const StackyFan& fan, bool require_extras_match) {
  std::map<std::pair<Rational, LatticeVector>, BoxElement> found;
  for (const auto& cone : fan.maximal_cones()) {
    std::vector<LatticeVector> cols;
    for (int i : cone) cols.push_back(fan.vector(i));
    auto snf = smith_normal_form(columns_matrix(cols, fan.rank));
    const std::size_t k = cone.size();
    ZVector s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = snf.S(i, i);
    std::vector<Integer> t(k, Integer(0));
    for (;;) {
      QVector scaled(k);
      for (std::size_t i = 0; i < k; ++i) scaled[i] = Rational(t[i], s[i]);
      QVector c = to_rational(snf.V) * scaled;
      std::vector<std::pair<int, Rational>> coeffs;
      for (std::size_t i = 0; i < k; ++i) coeffs.emplace_back(cone[i], frac_q(c[i]));
      auto b = make_box_element(fan, coeffs);
      if (!b.is_zero()) found.emplace(std::make_pair(b.age, b.vector), b);
      std::size_t pos = 0;
      while (pos < k && ++t[pos] == s[pos]) t[pos++] = 0;
      if (pos == k) break;
    }
  }
  BoxReport out;
  for (auto& [key, b] : found) {
    if (b.age == 1) out.age_one.push_back(b);
    out.elements.push_back(std::move(b));
  }
  if (require_extras_match) {
    std::set<LatticeVector> declared(fan.extra_vectors.begin(), fan.extra_vectors.end());
    std::set<LatticeVector> computed;
    for (const auto& b : out.age_one) computed.insert(b.vector);
    if (declared != computed)
      fail_validation(kModule, "box_elements", "extra vectors differ from the age-1 box elements");
  }
  return out;
}

nlohmann::json to_json(const BoxElement& b) {
  nlohmann::json j;
  j["vector"] = b.vector;
  j["cone"] = b.cone;
  auto coeffs = nlohmann::json::array();
  for (const auto& [i, c] : b.coefficients) coeffs.push_back({{"ray", i}, {"coefficient", to_string(c)}});
  j["coefficients"] = coeffs;
  j["age"] = to_string(b.age);
  return j;
}

CalabiYauCertificate verify_calabi_yau(const StackyFan& fan) {
  QMatrix a(fan.num_vectors(), fan.rank);
  for (int i = 0; i < fan.num_vectors(); ++i)
    for (int k = 0; k < fan.rank; ++k) a(i, k) = Rational(static_cast<long>(fan.vector(i)[k]));
  auto v = solve(a, QVector(fan.num_vectors(), Rational(1)));
  if (!v) return {std::nullopt, "no v with <v, b_i> = 1 for all vectors"};
  LatticeVector out;
  for (const auto& x : *v) {
    if (!is_integer(x)) return {std::nullopt, "covector is not integral"};
    out.push_back(to_int64(x));
  }
  return {out, {}};
}

}  // namespace toricgw

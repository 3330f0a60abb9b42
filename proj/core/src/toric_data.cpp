#include "toricgw/toric_data.hpp"

#include <algorithm>
#include <functional>

#include "toricgw/error.hpp"

namespace toricgw {

namespace {

const char* kModule = "fan-core";

nlohmann::json qvec_json(const QVector& v) {
  auto j = nlohmann::json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

QMatrix integer_vectors_matrix(const StackyFan& fan) {
  QMatrix b(fan.rank, fan.num_vectors());
  for (int i = 0; i < fan.num_vectors(); ++i)
    for (int k = 0; k < fan.rank; ++k) b(k, i) = Rational(static_cast<long>(fan.vector(i)[k]));
  return b;
}

IndexSet complement(const IndexSet& s, int size) {
  IndexSet out;
  for (int i = 0; i < size; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

// Kernel-coordinate generators of {x : K_J x >= 0}, J an independent r-subset of the anticone.
std::vector<QVector> anticone_generators(const QMatrix& K, const IndexSet& anticone) {
  const std::size_t r = K.cols();
  QMatrix sub(anticone.size(), r);
  for (std::size_t k = 0; k < anticone.size(); ++k)
    for (std::size_t a = 0; a < r; ++a) sub(k, a) = K(anticone[k], a);
  auto rows = independent_rows(sub);
  if (rows.size() < r) fail_consistency(kModule, "kernel_data", "anticone does not span the dual kernel");
  rows.resize(r);
  QMatrix KJ(r, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t a = 0; a < r; ++a) KJ(k, a) = sub(rows[k], a);
  auto inv = inverse(KJ);
  std::vector<QVector> gens;
  for (std::size_t k = 0; k < r; ++k) gens.push_back(inv->column(k));
  return gens;
}

// Picks `count` candidates (in order) whose `block` rows have determinant +-1.
std::optional<std::vector<std::size_t>> pick_unimodular(const std::vector<QVector>& blocks, std::size_t count) {
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
    if (chosen.size() == count) {
      QMatrix M(count, count);
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) M(i, j) = blocks[chosen[i]][j];
      return abs(determinant(M)) == 1;
    }
    for (std::size_t c = start; c < blocks.size(); ++c) {
      chosen.push_back(c);
      QMatrix M(chosen.size(), count);
      for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = 0; j < count; ++j) M(i, j) = blocks[chosen[i]][j];
      if (rank(M) == chosen.size() && dfs(c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (count == 0) return std::vector<std::size_t>{};
  if (dfs(0)) return chosen;
  return std::nullopt;
}

// All integer vectors in [-bound, bound]^dim except zero, ordered by (L1 norm, descending lex).
std::vector<std::vector<long>> small_vectors(std::size_t dim, long bound) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(dim, -bound);
  if (dim == 0) return out;
  for (;;) {
    if (std::any_of(v.begin(), v.end(), [](long x) { return x != 0; })) out.push_back(v);
    std::size_t p = 0;
    while (p < dim && v[p] == bound) v[p++] = -bound;
    if (p == dim) break;
    ++v[p];
  }
  auto l1 = [](const std::vector<long>& x) {
    long s = 0;
    for (auto e : x) s += std::abs(e);
    return s;
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (l1(a) != l1(b)) return l1(a) < l1(b);
    return a > b;
  });
  return out;
}

QVector combine(const std::vector<long>& c, const QMatrix& W, std::size_t first) {
  QVector v(W.cols(), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t a = 0; a < W.cols(); ++a) v[a] += Rational(c[k]) * W(first + k, a);
  return v;
}

// Rows of P in kernel-dual coordinates: h2-type first, extra-type last.
QMatrix default_basis(const QMatrix& K, int m, const std::vector<std::vector<QVector>>& gens) {
  const std::size_t r = K.cols();
  const std::size_t s = K.rows() - m;
  const std::size_t rp = r - s;

  QMatrix E(s, r);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t a = 0; a < r; ++a) E(j, a) = K(m + j, a);
  QMatrix W = QMatrix::identity(r);
  if (s > 0) {
    auto snf = smith_normal_form(to_integer(E));
    W = *inverse(to_rational(snf.V));
  }

  std::vector<QVector> extra_rows;
  if (s > 0) {
    std::vector<QVector> rows, blocks;
    for (const auto& c : small_vectors(s, 3)) {
      QVector v = combine(c, W, 0);
      auto lambda = solve(E.transpose(), v);
      if (!lambda) continue;
      if (std::any_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x < 0; })) continue;
      rows.push_back(v);
      blocks.emplace_back(c.begin(), c.end());
    }
    auto pick = pick_unimodular(blocks, s);
    if (!pick) fail_validation(kModule, "kernel_data", "no default basis found; supply basis_p");
    for (auto i : *pick) extra_rows.push_back(rows[i]);
  }

  std::vector<QVector> h2_rows;
  if (rp > 0) {
    long ab = 2, bb = s > 0 ? 2 : 0;
    while (std::pow(2 * ab + 1, rp) * std::pow(2 * bb + 1, s) > 200000 && (ab > 1 || bb > 0)) {
      if (bb > 0) --bb; else --ab;
    }
    std::vector<QVector> rows, blocks;
    auto betas = small_vectors(s, bb);
    betas.insert(betas.begin(), std::vector<long>(s, 0));
    for (const auto& alpha : small_vectors(rp, ab))
      for (const auto& beta : betas) {
        QVector v = combine(alpha, W, s);
        QVector w = combine(beta, W, 0);
        for (std::size_t a = 0; a < r; ++a) v[a] += w[a];
        bool nef = true;
        for (const auto& g : gens)
          for (const auto& x : g)
            if (dot(v, x) < 0) nef = false;
        if (!nef) continue;
        rows.push_back(v);
        blocks.emplace_back(alpha.begin(), alpha.end());
      }
    auto pick = pick_unimodular(blocks, rp);
    if (!pick) fail_validation(kModule, "kernel_data", "no nef default basis found; supply basis_p");
    for (auto i : *pick) h2_rows.push_back(rows[i]);
  }

  QMatrix P(r, r);
  std::size_t row = 0;
  for (const auto* set : {&h2_rows, &extra_rows})
    for (const auto& v : *set) {
      for (std::size_t a = 0; a < r; ++a) P(row, a) = v[a];
      ++row;
    }
  return P;
}

QMatrix user_basis(const QMatrix& K, int m, const std::vector<QVector>& basis) {
  const std::size_t r = K.cols();
  if (basis.size() != r)
    fail_validation(kModule, "kernel_data", "basis_p must have r = m' - n rows", std::to_string(basis.size()));
  QMatrix P(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < K.rows(); ++i) P(a, b) += basis[a][i] * K(i, b);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      if (!is_integer(P(a, b))) fail_validation(kModule, "kernel_data", "supplied basis is not integral on L");
  if (abs(determinant(P)) != 1) fail_validation(kModule, "kernel_data", "supplied basis is not unimodular over L^dual");
  const std::size_t s = K.rows() - m;
  QMatrix Et(r, s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t a = 0; a < r; ++a) Et(a, j) = K(m + j, a);
  for (std::size_t a = r - s; a < r; ++a)
    if (!solve(Et, P.row(a)))
      fail_validation(kModule, "kernel_data",
                      "supplied basis is not adapted: trailing elements must lie in the span of the extra divisors");
  return P;
}

void finish(ToricData& d) {
  const auto& fan = d.fan;
  d.n = fan.rank;
  d.m = fan.num_rays();
  d.mprime = fan.num_vectors();
  d.r = static_cast<int>(d.kernel_basis.size());
  d.rprime = static_cast<int>(d.h2_directions.size());
  if (d.r != d.mprime - d.n) fail_consistency(kModule, "kernel_data", "kernel rank mismatch");
  for (int a = 0; a < d.r; ++a)
    if (std::find(d.h2_directions.begin(), d.h2_directions.end(), a) == d.h2_directions.end())
      d.extra_directions.push_back(a);

  d.pairing = QMatrix(d.mprime, d.r);
  for (int a = 0; a < d.r; ++a) {
    if (static_cast<int>(d.kernel_basis[a].size()) != d.mprime || !d.in_kernel(d.kernel_basis[a]))
      fail_consistency(kModule, "kernel_data", "basis element outside the kernel", to_string(d.kernel_basis[a]));
    for (int i = 0; i < d.mprime; ++i) d.pairing(i, a) = d.kernel_basis[a][i];
  }
  auto rows = independent_rows(d.pairing);
  if (static_cast<int>(rows.size()) != d.r) fail_consistency(kModule, "kernel_data", "kernel basis is dependent");
  d.coordinate_rows.assign(rows.begin(), rows.end());
  QMatrix sub(d.r, d.r);
  for (int k = 0; k < d.r; ++k)
    for (int a = 0; a < d.r; ++a) sub(k, a) = d.pairing(d.coordinate_rows[k], a);
  d.coordinate_inverse = *inverse(sub);
  d.basis_p.assign(d.r, QVector(d.mprime, Rational(0)));
  for (int a = 0; a < d.r; ++a)
    for (int k = 0; k < d.r; ++k) d.basis_p[a][d.coordinate_rows[k]] = d.coordinate_inverse(a, k);

  for (int j = d.m; j < d.mprime; ++j)
    for (int a : d.h2_directions)
      if (d.pairing(j, a) != 0)
        fail_validation(kModule, "kernel_data", "basis is not adapted: extra divisor pairs with an h2 direction",
                        std::to_string(j));

  d.minimal_anticones.clear();
  d.cone_generators.clear();
  for (const auto& cone : fan.maximal_cones()) {
    IndexSet I = complement(cone, d.mprime);
    d.minimal_anticones.push_back(I);
    std::vector<QVector> gens;
    if (d.r > 0)
      for (const auto& x : anticone_generators(d.pairing, I)) gens.push_back(d.class_of(x));
    for (const auto& g : gens)
      for (const auto& c : d.coordinates(g))
        if (c < 0)
          fail_validation(kModule, "kernel_data", "basis is not nef on the effective cone; supply a nef basis_p",
                          to_string(g));
    d.cone_generators.push_back(std::move(gens));
  }

  auto cy = verify_calabi_yau(fan);
  d.cy_covector = cy.covector;

  d.dual_classes.clear();
  for (int j = d.m; j < d.mprime; ++j) {
    auto loc = fan.locate(to_qvector(fan.vector(j)));
    if (!loc) fail_consistency(kModule, "dual_class", "extra vector outside the support", std::to_string(j));
    DualClass dc;
    dc.index = j;
    dc.pairings.assign(d.mprime, Rational(0));
    dc.pairings[j] = 1;
    const auto& cone = fan.cones[loc->first];
    for (std::size_t k = 0; k < cone.size(); ++k) {
      const Rational& c = loc->second[k];
      if (c == 0) continue;
      dc.cone.push_back(cone[k]);
      dc.coefficients.emplace_back(cone[k], c);
      dc.pairings[cone[k]] = -c;
    }
    dc.anticone = complement(dc.cone, d.mprime);
    if (!d.in_kernel(dc.pairings))
      fail_consistency(kModule, "dual_class", "singular local system", std::to_string(j));
    d.dual_classes.push_back(std::move(dc));
  }
}

}  // namespace

bool ToricData::in_kernel(const QVector& d) const {
  if (static_cast<int>(d.size()) != fan.num_vectors()) return false;
  for (int k = 0; k < fan.rank; ++k) {
    Rational s = 0;
    for (int i = 0; i < fan.num_vectors(); ++i) s += d[i] * static_cast<long>(fan.vector(i)[k]);
    if (s != 0) return false;
  }
  return true;
}

QVector ToricData::coordinates(const QVector& d) const {
  QVector sub(r);
  for (int k = 0; k < r; ++k) sub[k] = d[coordinate_rows[k]];
  return coordinate_inverse * sub;
}

Rational ToricData::grade(const QVector& d) const {
  Rational g = 0;
  for (const auto& x : coordinates(d)) g += x;
  return g;
}

QVector ToricData::class_of(const QVector& coords) const {
  QVector d(mprime, Rational(0));
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < mprime; ++i) d[i] += coords[a] * kernel_basis[a][i];
  return d;
}

bool ToricData::is_anticone(const IndexSet& s) const {
  IndexSet rest = complement(s, mprime);
  for (int i : rest)
    if (!is_ray(i)) return false;
  return fan.is_cone(rest);
}

const DualClass& ToricData::dual(int j) const {
  if (j < m || j >= mprime) fail_validation(kModule, "dual_class", "index is not an extra vector", std::to_string(j));
  return dual_classes[j - m];
}

Var ToricData::y_var(int a) const { return Var::y(a == infinity_direction ? Var::kInfinity : a + 1); }
Var ToricData::q_var(int a) const { return Var::q(a == infinity_direction ? Var::kInfinity : a + 1); }
Var ToricData::tau_var(int j) const { return Var::tau(external_index[j]); }

Grading ToricData::y_grading() const {
  std::map<Var, Rational> w;
  for (int a = 0; a < r; ++a) w[y_var(a)] = 1;
  return Grading(w);
}

ToricData kernel_data(const StackyFan& fan, const KernelOptions& options) {
  ToricData d;
  d.fan = fan;
  const int n = fan.rank, mp = fan.num_vectors(), m = fan.num_rays();
  auto snf = smith_normal_form(to_integer(integer_vectors_matrix(fan)));
  QMatrix K(mp, mp - n);
  for (int i = 0; i < mp; ++i)
    for (int a = 0; a < mp - n; ++a) K(i, a) = Rational(snf.V(i, n + a));
  const int r = mp - n;

  std::vector<std::vector<QVector>> gens;
  if (r > 0)
    for (const auto& cone : fan.maximal_cones()) gens.push_back(anticone_generators(K, complement(cone, mp)));

  QMatrix P = QMatrix::identity(r);
  if (fan.basis_p) {
    P = user_basis(K, m, *fan.basis_p);
    d.basis_user_supplied = true;
  } else if (r > 0) {
    P = default_basis(K, m, gens);
  }
  auto Pinv = inverse(P);
  if (!Pinv || abs(determinant(P)) != 1) fail_consistency(kModule, "kernel_data", "basis change is not unimodular");
  QMatrix G = K * *Pinv;
  for (int a = 0; a < r; ++a) d.kernel_basis.push_back(G.column(a));
  for (int a = 0; a < m - n; ++a) d.h2_directions.push_back(a);
  for (int i = 0; i < mp; ++i) d.external_index.push_back(i);
  finish(d);
  if (options.require_calabi_yau && !d.cy_covector)
    fail_validation(kModule, "kernel_data", "fan is not Calabi-Yau");
  return d;
}

ToricData toric_data_with_kernel(const StackyFan& fan, std::vector<QVector> gamma, std::vector<int> h2_directions,
                                 std::vector<int> external_index, int infinity_vector, int infinity_direction) {
  ToricData d;
  d.fan = fan;
  d.kernel_basis = std::move(gamma);
  d.h2_directions = std::move(h2_directions);
  d.external_index = std::move(external_index);
  d.infinity_vector = infinity_vector;
  d.infinity_direction = infinity_direction;
  d.basis_user_supplied = true;
  finish(d);
  return d;
}

BoxElement sector(const ToricData& data, const QVector& pairings) {
  std::vector<std::pair<int, Rational>> coeffs;
  IndexSet support;
  for (int i = 0; i < data.mprime; ++i) {
    Rational f = frac_q(-pairings[i]);
    if (f == 0) continue;
    if (!data.is_ray(i))
      fail_validation("class-enumerator", "sector", "fractional pairing with an extra vector", std::to_string(i));
    coeffs.emplace_back(i, f);
    support.push_back(i);
  }
  if (!data.fan.is_cone(support))
    fail_validation("class-enumerator", "sector", "fractional support does not span a cone", to_string(pairings));
  return make_box_element(data.fan, coeffs);
}

EffClass make_class(const ToricData& data, const QVector& pairings) {
  if (!data.in_kernel(pairings))
    fail_validation("class-enumerator", "make_class", "pairings violate the fan relation", to_string(pairings));
  EffClass c;
  c.pairings = pairings;
  c.coords = data.coordinates(pairings);
  if (data.class_of(c.coords) != pairings)
    fail_consistency("class-enumerator", "make_class", "coordinates do not reproduce the class", to_string(pairings));
  for (const auto& x : c.coords) c.grade += x;
  c.sector = sector(data, pairings);
  return c;
}

bool is_effective(const ToricData& data, const QVector& pairings) {
  if (!data.in_kernel(pairings)) return false;
  IndexSet I;
  for (int i = 0; i < data.mprime; ++i)
    if (is_integer(pairings[i]) && pairings[i] >= 0) I.push_back(i);
  return data.is_anticone(I);
}

EffClass dual_class(const ToricData& data, int j) { return make_class(data, data.dual(j).pairings); }

SemiFanoCertificate verify_semi_fano(const ToricData& data) {
  SemiFanoCertificate cert;
  QVector rho(data.r, Rational(0));
  for (int i = 0; i < data.mprime; ++i)
    for (int a = 0; a < data.r; ++a) rho[a] += data.pairing(i, a);
  for (const auto& I : data.minimal_anticones) {
    QMatrix A(data.r, I.size());
    for (std::size_t k = 0; k < I.size(); ++k)
      for (int a = 0; a < data.r; ++a) A(a, k) = data.pairing(I[k], a);
    auto lambda = nonnegative_solution(A, rho);
    if (!lambda) {
      cert.semi_fano = false;
      cert.violated = I;
      return cert;
    }
    cert.witnesses.emplace_back(I, *lambda);
  }
  return cert;
}

nlohmann::json to_json(const ToricData& d) {
  nlohmann::json j;
  j["n"] = d.n;
  j["m"] = d.m;
  j["m_prime"] = d.mprime;
  j["r"] = d.r;
  j["r_prime"] = d.rprime;
  auto kb = nlohmann::json::array();
  for (const auto& g : d.kernel_basis) kb.push_back(qvec_json(g));
  j["kernel_basis"] = kb;
  auto bp = nlohmann::json::array();
  for (const auto& p : d.basis_p) bp.push_back(qvec_json(p));
  j["basis_p"] = bp;
  j["basis_origin"] = d.basis_user_supplied ? "supplied" : "default";
  auto pm = nlohmann::json::array();
  for (int i = 0; i < d.mprime; ++i) pm.push_back(qvec_json(d.pairing.row(i)));
  j["pairing_matrix"] = pm;
  j["minimal_anticones"] = d.minimal_anticones;
  if (d.cy_covector)
    j["cy_covector"] = *d.cy_covector;
  else
    j["cy_covector"] = nullptr;
  auto dc = nlohmann::json::array();
  for (const auto& c : d.dual_classes) {
    nlohmann::json e;
    e["index"] = c.index;
    e["pairings"] = qvec_json(c.pairings);
    e["anticone"] = c.anticone;
    auto co = nlohmann::json::array();
    for (const auto& [i, x] : c.coefficients) co.push_back({{"ray", i}, {"coefficient", to_string(x)}});
    e["coefficients"] = co;
    dc.push_back(e);
  }
  j["dual_classes"] = dc;
  return j;
}

nlohmann::json to_json(const SemiFanoCertificate& c) {
  nlohmann::json j;
  j["semi_fano"] = c.semi_fano;
  auto w = nlohmann::json::array();
  for (const auto& [I, lambda] : c.witnesses) w.push_back({{"anticone", I}, {"multipliers", qvec_json(lambda)}});
  j["witnesses"] = w;
  if (c.violated) j["violated_anticone"] = *c.violated;
  return j;
}

}  // namespace toricgw

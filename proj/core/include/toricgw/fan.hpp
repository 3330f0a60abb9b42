#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricgw/rational.hpp"

namespace toricgw {

using IndexSet = std::vector<int>;  // sorted

struct StackyFan {
  int rank = 0;
  std::vector<LatticeVector> rays;
  std::vector<IndexSet> cones;
  std::vector<LatticeVector> extra_vectors;
  std::vector<std::string> labels;  // empty or one per vector
  std::optional<std::vector<QVector>> basis_p;

  int num_rays() const { return static_cast<int>(rays.size()); }
  int num_vectors() const { return static_cast<int>(rays.size() + extra_vectors.size()); }
  const LatticeVector& vector(int i) const;
  std::string label(int i) const;

  // True when every index is a ray of one listed cone (faces included, empty set too).
  bool is_cone(const IndexSet& s) const;
  std::vector<IndexSet> maximal_cones() const;
  // Listed cone containing the point, with its coefficients; empty if outside |Sigma|.
  std::optional<std::pair<int, QVector>> locate(const QVector& point) const;
};

// Validates every structural invariant; throws Error(Validation) otherwise.
StackyFan make_stacky_fan(int rank, std::vector<LatticeVector> rays, std::vector<IndexSet> cones,
                          std::vector<LatticeVector> extra_vectors = {},
                          std::vector<std::string> labels = {},
                          std::optional<std::vector<QVector>> basis_p = std::nullopt);
StackyFan parse_stacky_fan(std::string_view document);
StackyFan load_stacky_fan(const std::string& path);
nlohmann::json to_json(const StackyFan& fan);

struct BoxElement {
  LatticeVector vector;
  IndexSet cone;                                     // minimal cone (ray indices)
  std::vector<std::pair<int, Rational>> coefficients;  // per ray of that cone, in (0,1)
  Rational age = 0;

  bool is_zero() const { return cone.empty(); }
};

struct BoxReport {
  std::vector<BoxElement> elements;  // nonzero, sorted by (age, vector)
  std::vector<BoxElement> age_one;
};

// With require_extras_match the extra vectors must be exactly the age-1 box elements.
BoxReport box_elements(const StackyFan& fan, bool require_extras_match = false);
// Box element from coefficients on rays (already reduced into [0,1)).
BoxElement make_box_element(const StackyFan& fan, const std::vector<std::pair<int, Rational>>& coeffs);
nlohmann::json to_json(const BoxElement& b);

struct CalabiYauCertificate {
  std::optional<LatticeVector> covector;
  std::string reason;  // when infeasible
  bool ok() const { return covector.has_value(); }
};

CalabiYauCertificate verify_calabi_yau(const StackyFan& fan);

}  // namespace toricgw

#pragma once

#include <vector>

#include "toricgw/compactification.hpp"
#include "toricgw/series.hpp"

namespace toricgw {

struct ForwardRelation {
  Var target;          // q_a or tau_j
  Var source;          // y_a for q relations
  int direction = -1;  // kernel direction a for q relations
  int vector = -1;     // extra vector j for tau relations
  Series correction;   // log q_a - log y_a, or tau_j itself
};

struct MirrorMap {
  Rational order;  // y-grade to which g and the relations are known
  std::vector<Series> g;  // per vector index
  std::vector<ForwardRelation> forward;

  // target = series(y): q_a = y_a exp(correction), tau_j = correction
  std::vector<Relation> relations() const;
  Grading target_grading() const;
};

// Sum over K_eff of the z^-1 extraction landing on D_j (ray j) or on 1_{b_j} (extra j).
Series g_series(const ToricData& data, int j, const Rational& order);
std::vector<Series> all_g_series(const ToricData& data, const Rational& order);

MirrorMap toric_mirror_map(const ToricData& data, const Rational& order);

// Forward order that lets the inverse be known to `order`.
Rational forward_order_for_inverse(const ToricData& data, const Rational& order);

Assignment inverse_mirror_map(const MirrorMap& mm, const Rational& order);

// Relations of the bar fan, built from the base g-series and checked against the relative
// I-function of the bar fan.
MirrorMap relative_mirror_map(const CompactifiedData& cd, const Rational& order);

nlohmann::json to_json(const MirrorMap& mm);
nlohmann::json to_json(const Assignment& inverse);

}  // namespace toricgw

#pragma once

#include <compare>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricgw/rational.hpp"

namespace toricgw {

enum class VarKind { Y, Q, Tau, Z };

struct Var {
  static constexpr int kInfinity = -1;

  VarKind kind = VarKind::Y;
  int index = 0;

  static Var y(int i) { return {VarKind::Y, i}; }
  static Var q(int i) { return {VarKind::Q, i}; }
  static Var tau(int i) { return {VarKind::Tau, i}; }
  static Var z(int i) { return {VarKind::Z, i}; }

  std::string name() const;  // y1, y_inf, q2, tau3, z1
  static Var parse(std::string_view name);

  auto operator<=>(const Var&) const = default;
};

class Monomial {
 public:
  using Entry = std::pair<Var, Rational>;

  Monomial() = default;
  static Monomial of(Var v, const Rational& e = 1);
  static Monomial from(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  Rational exponent(Var v) const;
  bool is_one() const { return entries_.empty(); }

  Monomial operator*(const Monomial& o) const;
  Monomial pow(const Rational& e) const;
  std::string to_string() const;

  bool operator==(const Monomial& o) const { return entries_ == o.entries_; }
  bool operator<(const Monomial& o) const { return entries_ < o.entries_; }

 private:
  std::vector<Entry> entries_;  // sorted by Var, no zero exponents
};

class Grading {
 public:
  Grading() = default;
  explicit Grading(std::map<Var, Rational> weights);

  bool contains(Var v) const { return weights_.count(v) != 0; }
  Rational weight(Var v) const;
  Rational grade(const Monomial& m) const;
  const std::map<Var, Rational>& weights() const { return weights_; }
  bool operator==(const Grading& o) const { return weights_ == o.weights_; }

 private:
  std::map<Var, Rational> weights_;
};

// Exact truncated series. Terms with grade above order are absent and undefined.
class Series {
 public:
  struct Key {
    Rational grade;
    Monomial monomial;
    bool operator<(const Key& o) const {
      if (grade != o.grade) return grade < o.grade;
      return monomial < o.monomial;
    }
    bool operator==(const Key& o) const { return grade == o.grade && monomial == o.monomial; }
  };
  using Terms = std::map<Key, Rational>;

  Series();
  Series(Grading grading, Rational order);
  Series(std::shared_ptr<const Grading> grading, Rational order);

  static Series constant(const Series& like, const Rational& c);
  static Series constant(Grading grading, Rational order, const Rational& c);
  static Series monomial(Grading grading, Rational order, const Monomial& m, const Rational& c = 1);
  static Series variable(Grading grading, Rational order, Var v);

  const Grading& grading() const { return *grading_; }
  const std::shared_ptr<const Grading>& grading_ptr() const { return grading_; }
  const Rational& order() const { return order_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial()); }
  std::optional<Rational> valuation() const;

  // Adds c * m; dropped above order. Rejects negative grade and non-constant grade 0.
  void add_term(const Monomial& m, const Rational& c);

  Series truncated(const Rational& order) const;
  Series regraded(Grading grading) const;
  Series scaled(const Rational& c) const;
  // c * m * this; the order shifts by grade(m).
  Series shifted(const Monomial& m, const Rational& c = 1) const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const { return scaled(-1); }
  Series operator*(const Series& o) const;

  bool operator==(const Series& o) const;
  bool same_terms(const Series& o) const;
  std::string to_text() const;

 private:
  std::shared_ptr<const Grading> grading_;
  Rational order_;
  Terms terms_;
};

using Assignment = std::map<Var, Series>;

Series add(const Series& s, const Series& t);
Series mul(const Series& s, const Series& t);
// Product terms up to the given order; the caller vouches for validity.
Series mul_to(const Series& s, const Series& t, const Rational& order);

Series exp_series(const Series& s);
Series log_one_plus(const Series& s);
// s^alpha. Non-integral or negative alpha needs a unique lowest-grade term.
Series pow_series(const Series& s, const Rational& alpha);

// Simultaneous substitution. The result order is the largest order the inputs determine,
// capped by the requested one.
Series substitute(const Series& s, const Assignment& assignment,
                  std::optional<Rational> order = std::nullopt);

struct Relation {
  Var target;
  Series series;  // target = series(source variables)
};

// Formal inverse of target_a = F_a(y). Every variable of the relations' grading is a source.
Assignment invert_map(const std::vector<Relation>& relations, const Rational& order);
// Grading of the target variables used by invert_map.
Grading target_grading(const std::vector<Relation>& relations);

nlohmann::json to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Grading& g);
nlohmann::json to_json(const Monomial& m);

}  // namespace toricgw

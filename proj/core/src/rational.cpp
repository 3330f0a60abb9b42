#include "toricgw/rational.hpp"

#include <limits>

#include "toricgw/error.hpp"

namespace toricgw {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  auto num = trim(s.substr(0, slash));
  auto den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!valid_integer_text(num) || !valid_integer_text(den))
    fail_validation("rational", "parse", "malformed rational", std::string(text));
  Integer d = parse_integer(den);
  if (d == 0) fail_validation("rational", "parse", "zero denominator", std::string(text));
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const Integer& x) { return x.get_str(); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer floor_q(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil_q(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational frac_q(const Rational& x) { return x - Rational(floor_q(x)); }

Rational factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer gcd_of(const LatticeVector& v) {
  Integer g = 0;
  for (auto x : v) {
    Integer xi(static_cast<long>(x));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
  }
  return g;
}

namespace {

std::optional<Integer> exact_root(const Integer& x, unsigned long k) {
  if (x < 0 && k % 2 == 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

Rational int_power(const Rational& x, const Integer& e) {
  if (!e.fits_ulong_p() && !Integer(-e).fits_ulong_p())
    fail_validation("rational", "power", "exponent too large", to_string(e));
  bool neg = e < 0;
  unsigned long k = neg ? Integer(-e).get_ui() : e.get_ui();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), k);
  if (neg) {
    if (num == 0) fail_validation("rational", "power", "zero to a negative power");
    std::swap(num, den);
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<Rational> rational_power(const Rational& x, const Rational& e) {
  if (is_integer(e)) return int_power(x, e.get_num());
  if (x == 0) {
    if (e > 0) return Rational(0);
    return std::nullopt;
  }
  Integer k = e.get_den();
  if (!k.fits_ulong_p()) return std::nullopt;
  auto rn = exact_root(x.get_num(), k.get_ui());
  auto rd = exact_root(x.get_den(), k.get_ui());
  if (!rn || !rd) return std::nullopt;
  Rational root(*rn, *rd);
  root.canonicalize();
  return int_power(root, e.get_num());
}

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) fail_validation("rational", "to_int64", "integer out of range", to_string(x));
  return static_cast<std::int64_t>(x.get_si());
}

std::int64_t to_int64(const Rational& x) {
  if (!is_integer(x)) fail_validation("rational", "to_int64", "value is not integral", to_string(x));
  return to_int64(x.get_num());
}

QVector to_qvector(const LatticeVector& v) {
  QVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

std::string to_string(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

std::string to_string(const LatticeVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace toricgw

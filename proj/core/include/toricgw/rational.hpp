#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toricgw {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;
using LatticeVector = std::vector<std::int64_t>;

// Accepts "p", "p/q", with optional sign and surrounding blanks.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

bool is_integer(const Rational& x);
Integer floor_q(const Rational& x);
Integer ceil_q(const Rational& x);
// Fractional part in [0, 1).
Rational frac_q(const Rational& x);

Rational factorial(unsigned long n);
Integer lcm(const Integer& a, const Integer& b);
Integer gcd_of(const LatticeVector& v);

// Exact x^e for rational e; empty when the result is irrational.
std::optional<Rational> rational_power(const Rational& x, const Rational& e);

std::int64_t to_int64(const Integer& x);
std::int64_t to_int64(const Rational& x);

QVector to_qvector(const LatticeVector& v);
std::string to_string(const QVector& v);
std::string to_string(const LatticeVector& v);

}  // namespace toricgw

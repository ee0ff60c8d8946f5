#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hconv {

// Exact coefficient field. mpq_class keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

using RationalVector = std::vector<Rational>;

std::string to_string(const Rational& r);

// Accepts "n" or "n/d" with an optional leading '-'; d must be positive.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Comma separated list, e.g. "1/2,-1/3".
RationalVector parse_rational_list(std::string_view text);

double to_double(const Rational& r);

// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double x);

Rational pow(const Rational& base, unsigned exponent);
Integer binomial(unsigned n, unsigned k);

// k!! with the conventions (-1)!! = 0!! = 1.
Integer double_factorial(int k);

Rational squared_distance(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace hconv

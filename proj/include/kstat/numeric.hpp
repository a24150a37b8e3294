#pragma once

#include <gmpxx.h>

#include <string>

namespace kstat {

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// n(n-1)...(n-m+1) at an integer point; zero when 0 <= n < m.
Integer falling_factorial(const Integer& n, unsigned m);

/// Exact parse of a decimal literal such as "-1.25e3". Throws kParse.
Rational parse_decimal(const std::string& text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

}  // namespace kstat

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace sgt {

using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p", "p/q", "-p/q" and exact decimals such as "0.25" or "1e-3".
Rational parse_rational(std::string_view text);

// Comma-separated list of rationals, e.g. "1,1/2,0.25".
std::vector<Rational> parse_rational_list(std::string_view text);

// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

std::string join(const std::vector<Rational>& xs, std::string_view sep = ",");

double to_double(const Rational& q);

// GMP compares only canonical fractions correctly.
std::vector<Rational> canonical(std::vector<Rational> xs);

}  // namespace sgt

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace bentail {

// Exact rational arithmetic for the logic engine. The classifier runs in
// double; everything whose acceptance checks are equalities runs on this.
using Rational = boost::multiprecision::cpp_rational;

// Parses "3/5", "0.6", "1", "-2/7". Decimal strings convert exactly
// (0.4 -> 2/5). Throws InputError on anything else.
Rational rational_from_string(std::string_view text);

// "3/5", "0", "1". Integers print without a denominator.
std::string to_fraction_string(const Rational& r);

double to_double(const Rational& r);

bool is_probability(const Rational& r);

}  // namespace bentail

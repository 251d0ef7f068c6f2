#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "ksym/errors.hpp"

namespace ksym {

/// Exact rational scalar for expression trees. Floats enter only at
/// evaluation time.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Parses "3", "-4/7" or decimal notation "2.5e-3" exactly.
Rational parse_rational(const std::string& text);

/// r^e for integer e (e < 0 requires r != 0).
Rational rational_pow(const Rational& r, long e);

/// Canonical printing: "n" or "n/d", denominator positive.
std::string to_string(const Rational& r);

}  // namespace ksym

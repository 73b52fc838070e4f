#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace motzeta {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "7", "-3" or "5/12".
Rational parse_rational(const std::string& text);

inline std::string to_string(const Integer& z) { return z.get_str(); }
std::string to_string(const Rational& r);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

/// Converts to a machine integer, throwing std::overflow_error when out of range.
std::int64_t to_int64(const Integer& z);

} // namespace motzeta

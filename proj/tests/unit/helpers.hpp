#pragma once

#include "motzeta/dagger_series.hpp"
#include "motzeta/polyset.hpp"

namespace motzeta::test {

inline LaurentPoly lp(std::vector<LaurentPoly::Term> terms) { return LaurentPoly::from_terms(terms); }

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

/// Interval cell lo (<|<=) x (<|<=) hi in one dimension.
inline RationalCell interval(Rational lo, bool lo_open, Rational hi, bool hi_open)
{
    RationalCell c;
    c.dim = 1;
    (lo_open ? c.lt : c.le).push_back({{Rational(-1)}, -lo});
    (hi_open ? c.lt : c.le).push_back({{Rational(1)}, hi});
    return c;
}

inline RationalCell point1(Rational x)
{
    RationalCell c;
    c.dim = 1;
    c.eq.push_back({{Rational(1)}, x});
    return c;
}

inline PolySet set_of(std::vector<RationalCell> cells)
{
    PolySet s;
    s.dim = cells.empty() ? 1 : cells.front().dim;
    s.cells = std::move(cells);
    return s;
}

} // namespace motzeta::test

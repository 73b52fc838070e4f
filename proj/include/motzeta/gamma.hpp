#pragma once

#include "motzeta/dagger_series.hpp"
#include "motzeta/polyset.hpp"

#include <vector>

namespace motzeta {

/// One piece x -> <a, x> + b of a piecewise affine form, valid on `guard`.
/// A guard without rows is the whole space.
struct AffinePiece {
    RationalCell guard;
    std::vector<Integer> a;
    Integer b;
};

struct AffineFormPW {
    std::vector<AffinePiece> pieces;

    /// Value at a point; throws MalformedData when no guard contains it.
    Rational operator()(const std::vector<Rational>& x) const;
    const AffinePiece& piece_at(const std::vector<Rational>& x) const;
};

/// The form x -> <a, x> + b on all of Q^n.
AffineFormPW global_form(std::vector<Integer> a, Integer b, int dim);

Rational weight(const std::vector<Rational>& gamma);

/// Points of S with coordinates in (1/m)Z, sorted lexicographically.
std::vector<std::vector<Rational>> lattice_points(const PolySet& s, int m);

/// (T - 1)^n * sum over lattice points of T^{-m w(gamma)}, as a Laurent polynomial in T.
LaurentPoly alpha_m(const PolySet& s, int m);

/// Rational form of the same sum for sets bounded below built from products
/// of intervals. The result has no denominator; its numerator lives in T.
DaggerSeries tilde_alpha(const PolySet& s, int m);

/// s_m = sum over S cap (1/m)Z^n of U^{-m l(gamma)} for m = 0..M (s_0 = 0),
/// stored as Laurent polynomials in U.
SeriesPrefix polytope_terms(const PolySet& s, const AffineFormPW& form, int M);

/// Denominator candidates (1 - U^{-m_v l(v)} T^{m_v}) from the vertices of the cells.
std::vector<DenFactor> polytope_candidates(const PolySet& s, const AffineFormPW& form);

struct PolytopeZeta {
    DaggerSeries series;
    LaurentPoly limit;
    long chi = 0;
    int terms = 0;
};

/// Fits Z(S, l)(T) = sum_{m>=1} s_m T^m and checks lim = -chi(S). M = 0
/// picks the number of terms from the candidate set. Throws FitFailure or
/// LimitMismatch.
PolytopeZeta zeta_polytope(const PolySet& s, const AffineFormPW& form, int M = 0);

} // namespace motzeta

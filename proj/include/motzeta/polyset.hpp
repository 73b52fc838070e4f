#pragma once

#include "motzeta/linear_constraints.hpp"

#include <vector>

namespace motzeta {

/// A row <c, x> (rel) d.
struct HalfRow {
    std::vector<Rational> c;
    Rational d;
    bool operator==(const HalfRow&) const = default;
};

/// Convex cell cut out by equalities, strict and weak inequalities.
struct RationalCell {
    int dim = 0;
    std::vector<HalfRow> eq, lt, le;

    std::vector<LinearConstraint> constraints() const;
    /// Same rows with every strict inequality relaxed.
    std::vector<LinearConstraint> closure_constraints() const;
    bool contains(const std::vector<Rational>& point) const;
    bool is_empty() const;
    bool operator==(const RationalCell&) const = default;
};

/// Finite union of cells in Q^dim.
struct PolySet {
    int dim = 0;
    std::vector<RationalCell> cells;
    bool operator==(const PolySet&) const = default;
};

/// Largest ambient dimension accepted by the decomposition routines.
inline constexpr int kMaxDecomposeDim = 4;

/// Disjoint relatively open cells covering the same points, obtained by
/// refining along every defining hyperplane. Throws DimensionLimitError above
/// kMaxDecomposeDim.
PolySet decompose_open(const PolySet& s);

/// Dimension of a nonempty relatively open cell from decompose_open.
int open_cell_dimension(const RationalCell& cell);

bool is_bounded(const PolySet& s);
bool is_bounded_below(const PolySet& s);

/// o-minimal Euler characteristic of a bounded set. Throws UnboundedError.
long chi(const PolySet& s);

/// lim_{r -> infinity} chi(S cap [-r, r]^n) for sets bounded below whose
/// recession cones are spanned by standard basis vectors. Throws
/// UnsupportedShapeError outside that class.
long chi_bounded(const PolySet& s);

/// Vertices of the closure of a cell, sorted and without duplicates.
std::vector<std::vector<Rational>> vertices(const RationalCell& cell);

/// Per-coordinate ranges of an axis-aligned cell; std::nullopt when some row
/// involves more than one coordinate.
std::optional<std::vector<Interval>> box_intervals(const RationalCell& cell);

RationalCell box_cell(const std::vector<Interval>& intervals);

} // namespace motzeta

#pragma once

#include "motzeta/numbers.hpp"

#include <optional>
#include <vector>

namespace motzeta {

enum class Relation { Eq, Lt, Le };

/// <coeffs, x> rel rhs
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational rhs;
    Relation rel = Relation::Le;
};

/// Exact feasibility of a system of linear (in)equalities over Q^n by
/// Fourier-Motzkin elimination with strictness tracking.
bool is_feasible(const std::vector<LinearConstraint>& system, int n);

/// Range of one coordinate over the solution set. Absent endpoints are infinite.
struct Interval {
    bool empty = false;
    std::optional<Rational> lower, upper;
    bool lower_strict = false, upper_strict = false;
};

Interval coordinate_range(const std::vector<LinearConstraint>& system, int n, int coordinate);

/// Rank of a list of row vectors.
int rank_of(std::vector<std::vector<Rational>> rows);

/// Solves a square system; std::nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

/// Scales so the first nonzero coefficient has absolute value one; flips the
/// relation direction never (scaling is positive). Returns false for an all-zero row.
bool normalize_constraint(LinearConstraint& c);

} // namespace motzeta

#pragma once

#include "motzeta/multipoly.hpp"

#include <utility>
#include <vector>

namespace motzeta {

/// coeff * prod var^exp over jet variables, sorted by variable index.
struct JetMonomial {
    Integer coeff;
    std::vector<std::pair<int, int>> vars;
};

/// Equations g_k = target_k (k = 1..m) on the jet variables a_{i,j}
/// (1 <= i <= n, 1 <= j <= m) describing arcs with f(phi) = t^m mod t^{m+1}.
struct JetConstraintSystem {
    int n = 0;
    int m = 0;
    std::vector<std::vector<JetMonomial>> levels; // levels[k-1] is g_k
    std::vector<Integer> targets;                  // targets[k-1]
    /// Product of the denominators cleared from each level; primes dividing it are unusable.
    Integer cleared_denominator = 1;

    int num_vars() const { return n * m; }
    /// Level-major index of a_{i,j}.
    static int var_index(int i, int j, int n) { return (j - 1) * n + (i - 1); }
    /// Level j of a variable index.
    int level_of(int var) const { return var / n + 1; }
};

/// Expands f(x + sum_j a_{.,j} t^j) modulo t^{m+1}. Throws NonvanishingError
/// when f(x) != 0.
JetConstraintSystem build_jet_system(const MultiPoly& f, const std::vector<Rational>& x, int m);

} // namespace motzeta

#pragma once

#include "motzeta/dagger_series.hpp"

#include <optional>
#include <vector>

namespace motzeta {

struct FitOptions {
    /// Largest allowed T-degree of the numerator. Defaults to
    /// N - (sum of b over all candidates) - margin.
    std::optional<int> degree_bound;
    int margin = 4;
};

/// Recovers a rational form for the prefix whose denominator is a
/// sub-multiset of the candidates. Among fitting subsets the result minimizes
/// (sum of b, number of factors, lexicographic factor list). Returns
/// std::nullopt when no subset fits. Throws FitFailure when the prefix is too
/// short for the requested bound and margin.
std::optional<DaggerSeries> ds_fit(const SeriesPrefix& prefix, const std::vector<DenFactor>& candidates,
                                   const FitOptions& options = {});

/// Guesses denominator factors from the prefix: finds the minimal linear
/// recurrence of a modular image and covers its characteristic polynomial by
/// factors (1 - L^a T^b) with 1 <= b <= max_b and |a| <= max_abs_a.
std::vector<DenFactor> infer_candidates(const SeriesPrefix& prefix, int max_b, int max_abs_a);

} // namespace motzeta

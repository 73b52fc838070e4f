#pragma once

#include "motzeta/dagger_series.hpp"
#include "motzeta/errors.hpp"
#include "motzeta/jet_system.hpp"
#include "motzeta/point_count.hpp"

#include <optional>
#include <string>
#include <vector>

namespace motzeta {

/// (field size q, number of points over F_q)
struct CountTable {
    std::vector<std::pair<Integer, Integer>> rows;
};

/// Counting polynomial P with P(q) = #X(F_q) on every recorded q.
struct ClassPoly {
    LaurentPoly poly;
    int degree_bound = 0;
};

/// Exact Lagrange interpolation through the first degree_bound + 1 rows after
/// dividing counts by q^absent; the remaining rows must be reproduced and all
/// coefficients must be integers. std::nullopt otherwise.
std::optional<ClassPoly> interpolate_class(const CountTable& table, int degree_bound, int absent = 0);

struct JetConfig {
    /// Only primes q = 1 (mod prime_modulus) are used for interpolation.
    int prime_modulus = 1;
    /// Number of primes; 0 means degree bound + 3.
    int primes = 0;
    CountOptions count;
    /// Allow the Frobenius-recurrence route when interpolation fails.
    bool frobenius_fallback = true;
};

/// Point counts of X_m over F_{p^r}, r = 1..R, for one prime p.
struct FrobeniusRun {
    std::uint32_t p = 0;
    std::vector<Integer> counts; // counts[r-1] = #X(F_{p^r})
    int recurrence_length = 0;
    Integer extrapolated; // value at r = 0
};

struct JetResult {
    int m = 0;
    CountTable table;
    int degree_bound = 0;
    std::optional<LaurentPoly> class_poly;
    std::optional<Integer> chi_c;
    /// "interpolation", "frobenius" or "failed"
    std::string route;
    std::vector<FrobeniusRun> frobenius;
};

/// Thrown when no route recovers chi_c; carries the raw counts.
class InterpolationFailure : public FitFailure {
public:
    InterpolationFailure(const std::string& what, JetResult result) : FitFailure(what), result_(std::move(result)) {}
    const JetResult& result() const noexcept { return result_; }

private:
    JetResult result_;
};

/// Primes usable for counting X_m of f: larger than deg f, not dividing any
/// coefficient or cleared denominator, and = 1 mod `modulus`.
std::vector<std::uint32_t> select_primes(const JetConstraintSystem& sys, int total_degree, int modulus, std::size_t count);

/// Interpolation degree bound: number of variables that occur, minus one.
int class_degree_bound(const JetConstraintSystem& sys);

/// Counts, interpolates and specializes. Never throws for a failed route; see `route`.
JetResult jet_class(const MultiPoly& f, const std::vector<Rational>& x, int m, const JetConfig& cfg = {});

/// chi_c(X_{m,x}), which equals the Lefschetz number of the m-th monodromy
/// power. Throws InterpolationFailure.
Integer lefschetz_via_jets(const MultiPoly& f, const std::vector<Rational>& x, int m, const JetConfig& cfg = {});

/// Terms [X_m] L^{-md} for m = 0..M (term 0 is zero). Throws InterpolationFailure
/// naming the failing m.
SeriesPrefix zeta_via_jets(const MultiPoly& f, const std::vector<Rational>& x, int d, int M, const JetConfig& cfg = {});

struct MilnorFiber {
    DaggerSeries zeta;
    LaurentPoly S;
    Integer chi;
};

/// S = -lim Z for the fitted prefix. Throws FitFailure.
MilnorFiber milnor_fiber_limit(const SeriesPrefix& prefix, const std::vector<DenFactor>& candidates);

} // namespace motzeta

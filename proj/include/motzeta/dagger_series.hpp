#pragma once

#include "motzeta/laurent_poly.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace motzeta {

/// Laurent polynomial in T whose coefficients are Laurent polynomials in L.
/// Keys are T-exponents; zero coefficients are never stored.
using TPoly = std::map<int, LaurentPoly>;

/// The denominator factor (1 - L^a T^b), b >= 1.
struct DenFactor {
    int a = 0;
    int b = 1;
    auto operator<=>(const DenFactor&) const = default;
};

/// Coefficients of T^0..T^N.
using SeriesPrefix = std::vector<LaurentPoly>;

/// Degree of a rational series; std::nullopt stands for the -infinity of the zero series.
using SeriesDegree = std::optional<int>;

TPoly tpoly_mul(const TPoly& lhs, const TPoly& rhs);
void tpoly_add(TPoly& acc, const TPoly& rhs);
TPoly tpoly_from_factors(const std::vector<DenFactor>& factors);
/// Exact quotient by (1 - L^a T^b); std::nullopt when the division is not exact.
std::optional<TPoly> tpoly_divide(const TPoly& num, const DenFactor& f);

/// Rational series P(T) / prod (1 - L^a_i T^b_i).
class DaggerSeries {
public:
    DaggerSeries() = default;
    DaggerSeries(TPoly numerator, std::vector<DenFactor> denominator);
    /// A Laurent polynomial in T (no denominator).
    static DaggerSeries polynomial(TPoly numerator) { return DaggerSeries(std::move(numerator), {}); }

    const TPoly& numerator() const noexcept { return num_; }
    const std::vector<DenFactor>& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.empty(); }

    /// Cancels every denominator factor that divides the numerator.
    DaggerSeries normalized() const;

    friend DaggerSeries operator+(const DaggerSeries& lhs, const DaggerSeries& rhs);
    friend DaggerSeries operator*(const DaggerSeries& lhs, const DaggerSeries& rhs);
    friend DaggerSeries operator*(const DaggerSeries& lhs, const LaurentPoly& scale);

    /// Equality of the represented rational functions (cross multiplication).
    friend bool operator==(const DaggerSeries& lhs, const DaggerSeries& rhs);

    std::string to_string() const;

private:
    TPoly num_;
    std::vector<DenFactor> den_;
};

/// Coefficients of T^0..T^N of the expansion in nonnegative powers of T.
SeriesPrefix ds_expand(const DaggerSeries& h, int N);
SeriesDegree ds_degree(const DaggerSeries& h);
/// lim_{T -> infinity}; std::nullopt when the degree is positive.
std::optional<LaurentPoly> ds_limit(const DaggerSeries& h);
/// Series whose coefficients are the termwise products. Throws FitFailure if
/// the constructed form cannot be verified.
DaggerSeries ds_hadamard(const DaggerSeries& h, const DaggerSeries& g);

std::string to_string(const SeriesPrefix& prefix);

} // namespace motzeta

#pragma once

#include "motzeta/numbers.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace motzeta {

/// Exact integer Laurent polynomial in one symbol, by default the Lefschetz
/// class L. The same type serves as a counting polynomial in q and as a
/// Laurent polynomial in T where a module needs one.
///
/// Storage is dense between the lowest and highest nonzero exponent; the
/// zero polynomial stores nothing. No stored boundary coefficient is zero.
class LaurentPoly {
public:
    using Term = std::pair<int, Integer>;

    LaurentPoly() = default;
    LaurentPoly(long constant);            // NOLINT: constants convert implicitly
    LaurentPoly(const Integer& constant);  // NOLINT

    static LaurentPoly monomial(const Integer& coefficient, int exponent);
    /// Sums the given terms; repeated exponents accumulate.
    static LaurentPoly from_terms(const std::vector<Term>& terms);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Lowest / highest exponent with a nonzero coefficient. Undefined on zero.
    int min_exponent() const noexcept { return low_; }
    int max_exponent() const noexcept { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    Integer coefficient(int exponent) const;
    const Integer& leading_coefficient() const { return coeffs_.back(); }

    /// Nonzero terms sorted by increasing exponent.
    std::vector<Term> terms() const;
    std::size_t term_count() const;

    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(const Integer& rhs);
    /// this -= scale * L^shift * rhs, without temporaries.
    void subtract_shifted(const LaurentPoly& rhs, int shift);
    void add_shifted(const LaurentPoly& rhs, int shift);

    friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
    friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
    friend LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
    friend LaurentPoly operator*(LaurentPoly lhs, const Integer& rhs) { return lhs *= rhs; }
    LaurentPoly operator-() const;

    friend bool operator==(const LaurentPoly& lhs, const LaurentPoly& rhs)
    {
        return lhs.low_ == rhs.low_ && lhs.coeffs_ == rhs.coeffs_;
    }

    /// Multiplication by L^k.
    LaurentPoly shifted(int k) const;
    LaurentPoly pow(unsigned e) const;

    /// Exact quotient by (1 - L^c), c != 0. Throws std::domain_error when the
    /// division leaves a remainder.
    LaurentPoly divided_by_one_minus_power(int c) const;

    /// Substitutes L = 1.
    Integer eval_at_one() const;
    /// Substitutes L = q exactly; q must be at least 2.
    Rational eval_at(const Integer& q) const;
    /// Substitutes L = u in Z/modulus, with u invertible. Used for fingerprints.
    std::uint64_t eval_mod(std::uint64_t u, std::uint64_t u_inverse, std::uint64_t modulus) const;

    std::string to_string(std::string_view symbol = "L") const;

private:
    void normalize();
    void reserve_range(int low, int high);

    int low_ = 0;
    std::vector<Integer> coeffs_;
};

/// Free-function spellings used throughout the command layer.
inline Integer eval_at_one(const LaurentPoly& p) { return p.eval_at_one(); }
inline Rational eval_at(const LaurentPoly& p, const Integer& q) { return p.eval_at(q); }

} // namespace motzeta

#pragma once

#include "motzeta/numbers.hpp"

#include <map>
#include <string>
#include <vector>

namespace motzeta {

/// Sparse integer polynomial in x1..xn.
class MultiPoly {
public:
    using Exponents = std::vector<int>;

    MultiPoly() = default;
    explicit MultiPoly(int n_vars) : n_vars_(n_vars) {}
    static MultiPoly constant(int n_vars, const Integer& c);
    /// x_{index+1}
    static MultiPoly variable(int n_vars, int index);

    int n_vars() const noexcept { return n_vars_; }
    const std::map<Exponents, Integer>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int total_degree() const;

    /// Same polynomial viewed in more variables.
    MultiPoly widened(int n_vars) const;

    void add_term(const Exponents& e, const Integer& c);
    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
    MultiPoly operator-() const;
    MultiPoly pow(unsigned e) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    std::string to_string() const;

    bool operator==(const MultiPoly&) const = default;

private:
    int n_vars_ = 0;
    std::map<Exponents, Integer> terms_;
};

/// Parses integer-coefficient expressions in x1..xn with + - * ^ and
/// parentheses, e.g. "x1^2 + x2^3". Throws ParseError with the byte offset.
/// The variable count is the largest index used (at least min_vars).
MultiPoly parse_poly(const std::string& text, int min_vars = 0);

} // namespace motzeta

#include "motzeta/linear_constraints.hpp"

#include <map>
#include <stdexcept>

namespace motzeta {

bool normalize_constraint(LinearConstraint& c)
{
    for (const auto& v : c.coeffs) {
        if (v == 0)
            continue;
        const Rational scale = 1 / abs(v);
        for (auto& w : c.coeffs)
            w *= scale;
        c.rhs *= scale;
        return true;
    }
    return false;
}

namespace {

/// Returns false when a constant row is violated.
bool constant_row_holds(const LinearConstraint& c)
{
    switch (c.rel) {
    case Relation::Eq: return c.rhs == 0;
    case Relation::Lt: return 0 < c.rhs;
    case Relation::Le: return 0 <= c.rhs;
    }
    return false;
}

/// Normalizes, drops trivial rows and keeps the tightest row per direction.
/// Returns false on a detected contradiction.
bool simplify(std::vector<LinearConstraint>& rows)
{
    std::map<std::vector<Rational>, LinearConstraint> ineqs;
    std::map<std::vector<Rational>, LinearConstraint> eqs;
    for (auto& c : rows) {
        if (!normalize_constraint(c)) {
            if (!constant_row_holds(c))
                return false;
            continue;
        }
        if (c.rel == Relation::Eq) {
            // An equality and its negation share a key after sign fixing.
            bool flip = false;
            for (const auto& v : c.coeffs)
                if (v != 0) {
                    flip = v < 0;
                    break;
                }
            if (flip) {
                for (auto& v : c.coeffs)
                    v = -v;
                c.rhs = -c.rhs;
            }
            auto [it, inserted] = eqs.emplace(c.coeffs, c);
            if (!inserted && it->second.rhs != c.rhs)
                return false;
            continue;
        }
        auto [it, inserted] = ineqs.emplace(c.coeffs, c);
        if (inserted)
            continue;
        auto& kept = it->second;
        if (c.rhs < kept.rhs || (c.rhs == kept.rhs && c.rel == Relation::Lt))
            kept = c;
    }
    rows.clear();
    for (auto& [k, c] : eqs)
        rows.push_back(std::move(c));
    for (auto& [k, c] : ineqs)
        rows.push_back(std::move(c));
    return true;
}

bool eliminate(std::vector<LinearConstraint>& rows, int var)
{
    const auto v = static_cast<std::size_t>(var);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].rel != Relation::Eq || rows[i].coeffs[v] == 0)
            continue;
        const LinearConstraint pivot = rows[i];
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
        for (auto& r : rows) {
            if (r.coeffs[v] == 0)
                continue;
            const Rational f = r.coeffs[v] / pivot.coeffs[v];
            for (std::size_t j = 0; j < r.coeffs.size(); ++j)
                r.coeffs[j] -= f * pivot.coeffs[j];
            r.rhs -= f * pivot.rhs;
        }
        return simplify(rows);
    }
    std::vector<LinearConstraint> upper, lower, rest;
    for (auto& r : rows) {
        if (r.coeffs[v] > 0)
            upper.push_back(std::move(r));
        else if (r.coeffs[v] < 0)
            lower.push_back(std::move(r));
        else
            rest.push_back(std::move(r));
    }
    for (const auto& p : upper)
        for (const auto& q : lower) {
            const Rational sp = 1 / p.coeffs[v];
            const Rational sq = -1 / q.coeffs[v];
            LinearConstraint c;
            c.coeffs.resize(p.coeffs.size());
            for (std::size_t j = 0; j < c.coeffs.size(); ++j)
                c.coeffs[j] = p.coeffs[j] * sp + q.coeffs[j] * sq;
            c.coeffs[v] = 0;
            c.rhs = p.rhs * sp + q.rhs * sq;
            c.rel = (p.rel == Relation::Lt || q.rel == Relation::Lt) ? Relation::Lt : Relation::Le;
            rest.push_back(std::move(c));
        }
    rows = std::move(rest);
    return simplify(rows);
}

} // namespace

bool is_feasible(const std::vector<LinearConstraint>& system, int n)
{
    std::vector<LinearConstraint> rows = system;
    if (!simplify(rows))
        return false;
    for (int var = 0; var < n; ++var)
        if (!eliminate(rows, var))
            return false;
    return true;
}

Interval coordinate_range(const std::vector<LinearConstraint>& system, int n, int coordinate)
{
    Interval out;
    std::vector<LinearConstraint> rows = system;
    bool ok = simplify(rows);
    for (int var = 0; ok && var < n; ++var)
        if (var != coordinate)
            ok = eliminate(rows, var);
    if (!ok) {
        out.empty = true;
        return out;
    }
    const auto j = static_cast<std::size_t>(coordinate);
    auto tighten_upper = [&](const Rational& value, bool strict) {
        if (!out.upper || value < *out.upper || (value == *out.upper && strict)) {
            out.upper = value;
            out.upper_strict = strict;
        }
    };
    auto tighten_lower = [&](const Rational& value, bool strict) {
        if (!out.lower || value > *out.lower || (value == *out.lower && strict)) {
            out.lower = value;
            out.lower_strict = strict;
        }
    };
    for (const auto& r : rows) {
        const Rational c = r.coeffs[j];
        const Rational value = r.rhs / c;
        const bool strict = r.rel == Relation::Lt;
        if (r.rel == Relation::Eq) {
            tighten_upper(value, false);
            tighten_lower(value, false);
        } else if (c > 0) {
            tighten_upper(value, strict);
        } else {
            tighten_lower(value, strict);
        }
    }
    if (out.lower && out.upper &&
        (*out.lower > *out.upper || (*out.lower == *out.upper && (out.lower_strict || out.upper_strict))))
        out.empty = true;
    return out;
}

int rank_of(std::vector<std::vector<Rational>> rows)
{
    int rank = 0;
    if (rows.empty())
        return 0;
    const std::size_t cols = rows.front().size();
    for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows.size() && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
        const auto& p = rows[static_cast<std::size_t>(rank)];
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0)
                continue;
            const Rational f = rows[r][col] / p[col];
            for (std::size_t c = col; c < cols; ++c)
                rows[r][c] -= f * p[c];
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        b[i] /= a[i][i];
    return b;
}

} // namespace motzeta

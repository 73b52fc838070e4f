#include "motzeta/polyset.hpp"

#include "motzeta/errors.hpp"

#include <algorithm>
#include <map>

namespace motzeta {

namespace {

Rational dot(const std::vector<Rational>& c, const std::vector<Rational>& x)
{
    Rational s = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += c[i] * x[i];
    return s;
}

LinearConstraint make(const HalfRow& r, Relation rel) { return {r.c, r.d, rel}; }

HalfRow negated(const HalfRow& r)
{
    HalfRow out = r;
    for (auto& v : out.c)
        v = -v;
    out.d = -out.d;
    return out;
}

/// Scales so the first nonzero coefficient is +1; std::nullopt for a zero row.
std::optional<HalfRow> hyperplane_key(const HalfRow& r)
{
    for (const auto& v : r.c) {
        if (v == 0)
            continue;
        HalfRow out = r;
        const Rational s = 1 / v;
        for (auto& w : out.c)
            w *= s;
        out.d *= s;
        return out;
    }
    return std::nullopt;
}

bool less_row(const HalfRow& x, const HalfRow& y)
{
    if (x.c != y.c)
        return x.c < y.c;
    return x.d < y.d;
}

void split(const std::vector<HalfRow>& planes, std::size_t index, std::vector<LinearConstraint>& system,
           std::vector<signed char>& signs, int n, std::map<std::vector<signed char>, RationalCell>& out)
{
    if (index == planes.size()) {
        if (out.count(signs))
            return;
        RationalCell cell;
        cell.dim = n;
        for (std::size_t i = 0; i < planes.size(); ++i) {
            if (signs[i] == 0)
                cell.eq.push_back(planes[i]);
            else if (signs[i] < 0)
                cell.lt.push_back(planes[i]);
            else
                cell.lt.push_back(negated(planes[i]));
        }
        out.emplace(signs, std::move(cell));
        return;
    }
    const HalfRow& h = planes[index];
    const std::pair<signed char, LinearConstraint> options[] = {
        {-1, make(h, Relation::Lt)}, {0, make(h, Relation::Eq)}, {1, make(negated(h), Relation::Lt)}};
    for (const auto& [sign, row] : options) {
        system.push_back(row);
        if (is_feasible(system, n)) {
            signs.push_back(sign);
            split(planes, index + 1, system, signs, n, out);
            signs.pop_back();
        }
        system.pop_back();
    }
}

RationalCell clipped(const RationalCell& cell, const Rational& r)
{
    RationalCell out = cell;
    for (int i = 0; i < cell.dim; ++i) {
        HalfRow up{std::vector<Rational>(static_cast<std::size_t>(cell.dim), Rational(0)), r};
        up.c[static_cast<std::size_t>(i)] = 1;
        out.le.push_back(up);
        out.le.push_back(HalfRow{negated(up).c, r});
    }
    return out;
}

} // namespace

std::vector<LinearConstraint> RationalCell::constraints() const
{
    std::vector<LinearConstraint> out;
    for (const auto& r : eq)
        out.push_back(make(r, Relation::Eq));
    for (const auto& r : lt)
        out.push_back(make(r, Relation::Lt));
    for (const auto& r : le)
        out.push_back(make(r, Relation::Le));
    return out;
}

std::vector<LinearConstraint> RationalCell::closure_constraints() const
{
    auto out = constraints();
    for (auto& c : out)
        if (c.rel == Relation::Lt)
            c.rel = Relation::Le;
    return out;
}

bool RationalCell::contains(const std::vector<Rational>& point) const
{
    for (const auto& r : eq)
        if (dot(r.c, point) != r.d)
            return false;
    for (const auto& r : lt)
        if (!(dot(r.c, point) < r.d))
            return false;
    for (const auto& r : le)
        if (!(dot(r.c, point) <= r.d))
            return false;
    return true;
}

bool RationalCell::is_empty() const { return !is_feasible(constraints(), dim); }

PolySet decompose_open(const PolySet& s)
{
    if (s.dim > kMaxDecomposeDim)
        throw DimensionLimitError("cell decomposition supports ambient dimension <= " +
                                  std::to_string(kMaxDecomposeDim) + ", got " + std::to_string(s.dim));
    std::vector<HalfRow> planes;
    for (const auto& cell : s.cells)
        for (const auto* rows : {&cell.eq, &cell.lt, &cell.le})
            for (const auto& r : *rows)
                if (auto key = hyperplane_key(r))
                    planes.push_back(*key);
    std::sort(planes.begin(), planes.end(), less_row);
    planes.erase(std::unique(planes.begin(), planes.end()), planes.end());

    std::map<std::vector<signed char>, RationalCell> pieces;
    for (const auto& cell : s.cells) {
        auto system = cell.constraints();
        if (!is_feasible(system, s.dim))
            continue;
        std::vector<signed char> signs;
        split(planes, 0, system, signs, s.dim, pieces);
    }
    PolySet out;
    out.dim = s.dim;
    for (auto& [signs, cell] : pieces)
        out.cells.push_back(std::move(cell));
    return out;
}

int open_cell_dimension(const RationalCell& cell)
{
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : cell.eq)
        rows.push_back(r.c);
    return cell.dim - rank_of(std::move(rows));
}

bool is_bounded(const PolySet& s)
{
    for (const auto& cell : s.cells) {
        const auto system = cell.constraints();
        for (int i = 0; i < s.dim; ++i) {
            const Interval iv = coordinate_range(system, s.dim, i);
            if (iv.empty)
                break;
            if (!iv.lower || !iv.upper)
                return false;
        }
    }
    return true;
}

bool is_bounded_below(const PolySet& s)
{
    for (const auto& cell : s.cells) {
        const auto system = cell.constraints();
        for (int i = 0; i < s.dim; ++i) {
            const Interval iv = coordinate_range(system, s.dim, i);
            if (iv.empty)
                break;
            if (!iv.lower)
                return false;
        }
    }
    return true;
}

long chi(const PolySet& s)
{
    if (!is_bounded(s))
        throw UnboundedError("Euler characteristic requires a bounded set");
    long total = 0;
    for (const auto& cell : decompose_open(s).cells)
        total += open_cell_dimension(cell) % 2 == 0 ? 1 : -1;
    return total;
}

long chi_bounded(const PolySet& s)
{
    if (!is_bounded_below(s))
        throw UnsupportedShapeError("set is not bounded below");
    const auto n = static_cast<std::size_t>(s.dim);
    Rational reach = 0;
    for (const auto& cell : s.cells) {
        if (cell.is_empty())
            continue;
        // Recession cone: homogeneous closure rows.
        std::vector<LinearConstraint> cone;
        for (auto c : cell.closure_constraints()) {
            c.rhs = 0;
            cone.push_back(std::move(c));
        }
        for (std::size_t i = 0; i < n; ++i) {
            bool basis_direction = true;
            for (const auto& c : cone)
                if ((c.rel == Relation::Eq && c.coeffs[i] != 0) || c.coeffs[i] > 0)
                    basis_direction = false;
            if (basis_direction)
                continue;
            auto probe = cone;
            LinearConstraint positive{std::vector<Rational>(n, Rational(0)), 0, Relation::Lt};
            positive.coeffs[i] = -1;
            probe.push_back(positive);
            if (is_feasible(probe, s.dim))
                throw UnsupportedShapeError("recession cone is not spanned by standard basis vectors");
        }
        for (const auto& v : vertices(cell))
            for (const auto& x : v)
                reach = std::max(reach, Rational(abs(x)));
    }
    const Rational r = Rational(ceil_of(reach) + 1);
    auto truncated_chi = [&](const Rational& radius) {
        PolySet t{s.dim, {}};
        for (const auto& cell : s.cells)
            t.cells.push_back(clipped(cell, radius));
        return chi(t);
    };
    const long first = truncated_chi(r);
    const long second = truncated_chi(2 * r);
    if (first != second)
        throw UnsupportedShapeError("truncated Euler characteristic did not stabilize");
    return first;
}

std::vector<std::vector<Rational>> vertices(const RationalCell& cell)
{
    std::vector<std::vector<Rational>> out;
    if (cell.is_empty())
        return out;
    const auto rows = cell.closure_constraints();
    const auto n = static_cast<std::size_t>(cell.dim);
    if (n == 0)
        return {std::vector<Rational>{}};
    if (rows.size() < n)
        return out;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i)
        pick[i] = i;
    while (true) {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (std::size_t i : pick) {
            a.push_back(rows[i].coeffs);
            b.push_back(rows[i].rhs);
        }
        if (auto x = solve_square(std::move(a), std::move(b))) {
            bool inside = true;
            for (const auto& r : rows) {
                const Rational v = dot(r.coeffs, *x);
                if (r.rel == Relation::Eq ? v != r.rhs : v > r.rhs) {
                    inside = false;
                    break;
                }
            }
            if (inside)
                out.push_back(std::move(*x));
        }
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == rows.size() - n + (i - 1))
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::vector<Interval>> box_intervals(const RationalCell& cell)
{
    for (const auto* rows : {&cell.eq, &cell.lt, &cell.le})
        for (const auto& r : *rows) {
            int nonzero = 0;
            for (const auto& v : r.c)
                nonzero += v != 0;
            if (nonzero > 1)
                return std::nullopt;
        }
    const auto system = cell.constraints();
    std::vector<Interval> out;
    for (int i = 0; i < cell.dim; ++i)
        out.push_back(coordinate_range(system, cell.dim, i));
    return out;
}

RationalCell box_cell(const std::vector<Interval>& intervals)
{
    RationalCell cell;
    cell.dim = static_cast<int>(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        HalfRow unit{std::vector<Rational>(intervals.size(), Rational(0)), 0};
        unit.c[i] = 1;
        if (iv.lower && iv.upper && *iv.lower == *iv.upper && !iv.lower_strict && !iv.upper_strict) {
            unit.d = *iv.lower;
            cell.eq.push_back(unit);
            continue;
        }
        if (iv.upper) {
            HalfRow r = unit;
            r.d = *iv.upper;
            (iv.upper_strict ? cell.lt : cell.le).push_back(r);
        }
        if (iv.lower) {
            HalfRow r = negated(unit);
            r.d = -*iv.lower;
            (iv.lower_strict ? cell.lt : cell.le).push_back(r);
        }
    }
    return cell;
}

} // namespace motzeta

#include "motzeta/gamma.hpp"

#include "motzeta/errors.hpp"
#include "motzeta/series_fit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace motzeta {

namespace {

/// Integer range of k = m * x_i for x_i in the interval; std::nullopt bounds are infinite.
struct KRange {
    std::optional<long> lo, hi;
    bool empty() const { return lo && hi && *lo > *hi; }
};

KRange scaled_range(const Interval& iv, int m)
{
    KRange out;
    if (iv.lower) {
        const Rational v = *iv.lower * m;
        out.lo = to_int64(iv.lower_strict ? floor_of(v) + 1 : ceil_of(v));
    }
    if (iv.upper) {
        const Rational v = *iv.upper * m;
        out.hi = to_int64(iv.upper_strict ? ceil_of(v) - 1 : floor_of(v));
    }
    return out;
}

bool is_global(const AffinePiece& p) { return p.guard.eq.empty() && p.guard.lt.empty() && p.guard.le.empty(); }

std::vector<RationalCell> disjoint_cells(const PolySet& s)
{
    std::vector<RationalCell> cells;
    for (const auto& c : s.cells)
        if (!c.is_empty())
            cells.push_back(c);
    if (cells.size() <= 1)
        return cells;
    return decompose_open(PolySet{s.dim, cells}).cells;
}

Integer lcm_of_denominators(const std::vector<Rational>& v)
{
    Integer l = 1;
    for (const auto& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

LaurentPoly box_term(const std::vector<Interval>& box, const AffinePiece& form, int m)
{
    // prod_i sum_{k in range_i} U^{-a_i k}, each factor as a two-term numerator
    // over (1 - U^{-a_i}), then divided out exactly.
    LaurentPoly numerator(1L);
    std::vector<long> divisors;
    for (std::size_t i = 0; i < box.size(); ++i) {
        const KRange r = scaled_range(box[i], m);
        if (!r.lo || !r.hi)
            throw UnboundedError("polytope terms require a bounded set");
        if (r.empty())
            return {};
        const long a = to_int64(form.a[i]);
        if (a == 0) {
            numerator *= Integer(*r.hi - *r.lo + 1);
            continue;
        }
        LaurentPoly f = LaurentPoly::monomial(1, static_cast<int>(-a * *r.lo));
        f -= LaurentPoly::monomial(1, static_cast<int>(-a * (*r.hi + 1)));
        numerator *= f;
        divisors.push_back(-a);
    }
    for (long c : divisors)
        numerator = numerator.divided_by_one_minus_power(static_cast<int>(c));
    return numerator.shifted(static_cast<int>(-to_int64(form.b) * m));
}

} // namespace

const AffinePiece& AffineFormPW::piece_at(const std::vector<Rational>& x) const
{
    for (const auto& p : pieces)
        if (p.guard.contains(x))
            return p;
    throw MalformedData("affine form is undefined at a lattice point");
}

Rational AffineFormPW::operator()(const std::vector<Rational>& x) const
{
    const auto& p = piece_at(x);
    Rational v(p.b);
    for (std::size_t i = 0; i < x.size(); ++i)
        v += Rational(p.a[i]) * x[i];
    return v;
}

AffineFormPW global_form(std::vector<Integer> a, Integer b, int dim)
{
    AffinePiece p;
    p.guard.dim = dim;
    p.a = std::move(a);
    p.b = std::move(b);
    return AffineFormPW{{std::move(p)}};
}

Rational weight(const std::vector<Rational>& gamma)
{
    Rational s = 0;
    for (const auto& g : gamma)
        s += g;
    return s;
}

std::vector<std::vector<Rational>> lattice_points(const PolySet& s, int m)
{
    if (m < 1)
        throw std::invalid_argument("m must be positive");
    if (!is_bounded(s))
        throw UnboundedError("lattice points require a bounded set");
    std::set<std::vector<Rational>> found;
    const auto n = static_cast<std::size_t>(s.dim);
    for (const auto& cell : s.cells) {
        const auto system = cell.constraints();
        std::vector<KRange> ranges;
        bool empty = false;
        for (int i = 0; i < s.dim && !empty; ++i) {
            const Interval iv = coordinate_range(system, s.dim, i);
            empty = iv.empty;
            if (!empty) {
                // Bounding box only; membership is tested exactly below.
                Interval closed = iv;
                closed.lower_strict = closed.upper_strict = false;
                ranges.push_back(scaled_range(closed, m));
                empty = ranges.back().empty();
            }
        }
        if (empty)
            continue;
        if (n == 0) {
            found.insert({});
            continue;
        }
        std::vector<long> k(n);
        for (std::size_t i = 0; i < n; ++i)
            k[i] = *ranges[i].lo;
        std::vector<Rational> point(n);
        while (true) {
            for (std::size_t i = 0; i < n; ++i)
                point[i] = make_rational(k[i], m);
            if (cell.contains(point))
                found.insert(point);
            std::size_t i = n;
            while (i > 0 && k[i - 1] == *ranges[i - 1].hi) {
                k[i - 1] = *ranges[i - 1].lo;
                --i;
            }
            if (i == 0)
                break;
            ++k[i - 1];
        }
    }
    return {found.begin(), found.end()};
}

LaurentPoly alpha_m(const PolySet& s, int m)
{
    std::vector<LaurentPoly::Term> terms;
    for (const auto& g : lattice_points(s, m)) {
        const Rational e = weight(g) * m;
        terms.emplace_back(static_cast<int>(-to_int64(e.get_num())), Integer(1));
    }
    LaurentPoly sum = LaurentPoly::from_terms(terms);
    const LaurentPoly t_minus_one = LaurentPoly::from_terms({{1, 1}, {0, -1}});
    return sum * t_minus_one.pow(static_cast<unsigned>(s.dim));
}

DaggerSeries tilde_alpha(const PolySet& s, int m)
{
    if (m < 1)
        throw std::invalid_argument("m must be positive");
    std::vector<RationalCell> cells;
    for (const auto& c : s.cells) {
        if (c.is_empty())
            continue;
        if (!box_intervals(c))
            throw UnsupportedShapeError("tilde_alpha supports products of intervals only");
        cells.push_back(c);
    }
    if (!is_bounded_below(PolySet{s.dim, cells}))
        throw UnsupportedShapeError("tilde_alpha requires a set bounded below");
    if (cells.size() > 1)
        cells = decompose_open(PolySet{s.dim, cells}).cells;
    // (T - 1) sum_{k=lo}^{hi} T^{-k} = T^{1-lo} - T^{-hi}; an unbounded range gives T^{1-lo}.
    LaurentPoly total;
    for (const auto& cell : cells) {
        const auto box = *box_intervals(cell);
        LaurentPoly term(1L);
        for (const auto& iv : box) {
            const KRange r = scaled_range(iv, m);
            if (r.empty()) {
                term = LaurentPoly();
                break;
            }
            LaurentPoly f = LaurentPoly::monomial(1, static_cast<int>(1 - *r.lo));
            if (r.hi)
                f -= LaurentPoly::monomial(1, static_cast<int>(-*r.hi));
            term *= f;
        }
        total += term;
    }
    TPoly num;
    for (const auto& [e, c] : total.terms())
        num.emplace(e, LaurentPoly(c));
    return DaggerSeries::polynomial(std::move(num));
}

SeriesPrefix polytope_terms(const PolySet& s, const AffineFormPW& form, int M)
{
    if (!is_bounded(s))
        throw UnboundedError("polytope zeta requires a bounded set");
    SeriesPrefix out(static_cast<std::size_t>(M) + 1);
    const auto cells = disjoint_cells(s);
    const bool fast = form.pieces.size() == 1 && is_global(form.pieces.front()) &&
                      std::all_of(cells.begin(), cells.end(), [](const auto& c) { return box_intervals(c).has_value(); });
    if (fast) {
        std::vector<std::vector<Interval>> boxes;
        for (const auto& c : cells)
            boxes.push_back(*box_intervals(c));
        for (int m = 1; m <= M; ++m)
            for (const auto& box : boxes)
                out[static_cast<std::size_t>(m)] += box_term(box, form.pieces.front(), m);
        return out;
    }
    const PolySet disjoint{s.dim, cells};
    for (int m = 1; m <= M; ++m) {
        std::vector<LaurentPoly::Term> terms;
        for (const auto& g : lattice_points(disjoint, m)) {
            const Rational e = form(g) * m;
            terms.emplace_back(static_cast<int>(-to_int64(e.get_num())), Integer(1));
        }
        out[static_cast<std::size_t>(m)] = LaurentPoly::from_terms(terms);
    }
    return out;
}

std::vector<DenFactor> polytope_candidates(const PolySet& s, const AffineFormPW& form)
{
    std::map<DenFactor, int> best;
    for (const auto& cell : disjoint_cells(s)) {
        for (const auto& piece : form.pieces) {
            RationalCell part = cell;
            for (const auto& r : piece.guard.eq)
                part.eq.push_back(r);
            for (const auto& r : piece.guard.lt)
                part.lt.push_back(r);
            for (const auto& r : piece.guard.le)
                part.le.push_back(r);
            std::map<DenFactor, int> local;
            for (const auto& v : vertices(part)) {
                const Integer mv = lcm_of_denominators(v);
                Rational value(piece.b);
                for (std::size_t i = 0; i < v.size(); ++i)
                    value += Rational(piece.a[i]) * v[i];
                value *= Rational(mv);
                ++local[DenFactor{static_cast<int>(-to_int64(value.get_num())), static_cast<int>(to_int64(mv))}];
            }
            for (const auto& [f, k] : local)
                best[f] = std::max(best[f], k);
        }
    }
    std::vector<DenFactor> out;
    for (const auto& [f, k] : best)
        out.insert(out.end(), static_cast<std::size_t>(k), f);
    return out;
}

PolytopeZeta zeta_polytope(const PolySet& s, const AffineFormPW& form, int M)
{
    PolytopeZeta out;
    out.chi = chi(s);
    auto candidates = polytope_candidates(s, form);
    if (candidates.empty()) {
        out.terms = M;
        out.limit = LaurentPoly(-out.chi);
        if (out.chi != 0)
            throw LimitMismatch("empty candidate set for a set with nonzero Euler characteristic");
        return out;
    }
    constexpr int margin = 4;
    for (int attempt = 0; attempt < 2; ++attempt) {
        int sum_b = 0;
        for (const auto& f : candidates)
            sum_b += f.b;
        const int terms = M > 0 ? M : 2 * sum_b + margin + 1;
        if (terms < 2 * sum_b + margin)
            throw FitFailure("M = " + std::to_string(M) + " is too small; need at least " +
                             std::to_string(2 * sum_b + margin));
        const auto prefix = polytope_terms(s, form, terms);
        FitOptions options;
        options.degree_bound = sum_b;
        options.margin = margin;
        if (auto fit = ds_fit(prefix, candidates, options)) {
            out.series = fit->normalized();
            out.terms = terms;
            const auto lim = ds_limit(out.series);
            if (!lim || *lim != LaurentPoly(-out.chi))
                throw LimitMismatch("fitted limit " + (lim ? lim->to_string("U") : std::string("undefined")) +
                                    " differs from -chi = " + std::to_string(-out.chi));
            out.limit = *lim;
            return out;
        }
        if (M > 0)
            break;
        const auto once = candidates;
        candidates.insert(candidates.end(), once.begin(), once.end());
        std::sort(candidates.begin(), candidates.end());
    }
    throw FitFailure("no denominator among the vertex candidates fits the polytope series");
}

} // namespace motzeta

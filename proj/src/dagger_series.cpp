#include "motzeta/dagger_series.hpp"

#include "motzeta/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace motzeta {

TPoly tpoly_mul(const TPoly& lhs, const TPoly& rhs)
{
    TPoly out;
    for (const auto& [e1, c1] : lhs)
        for (const auto& [e2, c2] : rhs) {
            auto& slot = out[e1 + e2];
            slot += c1 * c2;
            if (slot.is_zero())
                out.erase(e1 + e2);
        }
    return out;
}

void tpoly_add(TPoly& acc, const TPoly& rhs)
{
    for (const auto& [e, c] : rhs) {
        auto& slot = acc[e];
        slot += c;
        if (slot.is_zero())
            acc.erase(e);
    }
}

namespace {

void multiply_by_factor(TPoly& p, const DenFactor& f)
{
    TPoly shifted;
    for (const auto& [e, c] : p)
        shifted.emplace(e + f.b, -c.shifted(f.a));
    tpoly_add(p, shifted);
}

} // namespace

TPoly tpoly_from_factors(const std::vector<DenFactor>& factors)
{
    TPoly p{{0, LaurentPoly(1L)}};
    for (const auto& f : factors)
        multiply_by_factor(p, f);
    return p;
}

std::optional<TPoly> tpoly_divide(const TPoly& num, const DenFactor& f)
{
    if (num.empty())
        return TPoly{};
    const int lo = num.begin()->first;
    const int hi = num.rbegin()->first;
    if (hi - lo < f.b)
        return std::nullopt;
    // N = Q - L^a T^b Q, so Q_k = N_k + L^a Q_{k-b}.
    TPoly q;
    auto coeff = [](const TPoly& p, int e) {
        auto it = p.find(e);
        return it == p.end() ? LaurentPoly() : it->second;
    };
    for (int k = lo; k <= hi - f.b; ++k) {
        LaurentPoly v = coeff(num, k);
        v.add_shifted(coeff(q, k - f.b), f.a);
        if (!v.is_zero())
            q.emplace(k, std::move(v));
    }
    for (int k = hi - f.b + 1; k <= hi; ++k) {
        LaurentPoly r = coeff(num, k);
        r.add_shifted(coeff(q, k - f.b), f.a);
        if (!r.is_zero())
            return std::nullopt;
    }
    return q;
}

DaggerSeries::DaggerSeries(TPoly numerator, std::vector<DenFactor> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator))
{
    for (auto it = num_.begin(); it != num_.end();)
        it = it->second.is_zero() ? num_.erase(it) : std::next(it);
    for (const auto& f : den_)
        if (f.b < 1)
            throw std::invalid_argument("denominator factor needs b >= 1");
    std::sort(den_.begin(), den_.end());
}

DaggerSeries DaggerSeries::normalized() const
{
    if (num_.empty())
        return {};
    TPoly num = num_;
    std::vector<DenFactor> kept;
    for (const auto& f : den_) {
        if (auto q = tpoly_divide(num, f))
            num = std::move(*q);
        else
            kept.push_back(f);
    }
    return DaggerSeries(std::move(num), std::move(kept));
}

DaggerSeries operator+(const DaggerSeries& lhs, const DaggerSeries& rhs)
{
    if (lhs.is_zero())
        return rhs;
    if (rhs.is_zero())
        return lhs;
    // Common denominator: the multiset union, not the product.
    std::vector<DenFactor> common;
    std::vector<DenFactor> extra_l, extra_r;
    std::set_union(lhs.den_.begin(), lhs.den_.end(), rhs.den_.begin(), rhs.den_.end(), std::back_inserter(common));
    std::set_difference(common.begin(), common.end(), lhs.den_.begin(), lhs.den_.end(), std::back_inserter(extra_l));
    std::set_difference(common.begin(), common.end(), rhs.den_.begin(), rhs.den_.end(), std::back_inserter(extra_r));
    TPoly num = tpoly_mul(lhs.num_, tpoly_from_factors(extra_l));
    tpoly_add(num, tpoly_mul(rhs.num_, tpoly_from_factors(extra_r)));
    return DaggerSeries(std::move(num), std::move(common));
}

DaggerSeries operator*(const DaggerSeries& lhs, const DaggerSeries& rhs)
{
    std::vector<DenFactor> den = lhs.den_;
    den.insert(den.end(), rhs.den_.begin(), rhs.den_.end());
    return DaggerSeries(tpoly_mul(lhs.num_, rhs.num_), std::move(den));
}

DaggerSeries operator*(const DaggerSeries& lhs, const LaurentPoly& scale)
{
    TPoly num;
    for (const auto& [e, c] : lhs.num_)
        num.emplace(e, c * scale);
    return DaggerSeries(std::move(num), lhs.den_);
}

bool operator==(const DaggerSeries& lhs, const DaggerSeries& rhs)
{
    return tpoly_mul(lhs.num_, tpoly_from_factors(rhs.den_)) == tpoly_mul(rhs.num_, tpoly_from_factors(lhs.den_));
}

std::string DaggerSeries::to_string() const
{
    if (num_.empty())
        return "0";
    std::string num;
    bool first = true;
    for (auto it = num_.rbegin(); it != num_.rend(); ++it) {
        std::string c = it->second.to_string();
        const bool compound = it->second.term_count() > 1;
        if (!first)
            num += (!compound && c.front() == '-') ? " - " : " + ";
        if (!first && !compound && c.front() == '-')
            c.erase(0, 1);
        first = false;
        if (it->first == 0) {
            num += compound ? "(" + c + ")" : c;
            continue;
        }
        if (c != "1")
            num += (compound ? "(" + c + ")" : c) + "*";
        num += "T";
        if (it->first != 1)
            num += "^" + std::to_string(it->first);
    }
    if (den_.empty())
        return num;
    std::string den;
    for (const auto& f : den_) {
        den += "(1 - ";
        if (f.a != 0)
            den += f.a == 1 ? "L*" : "L^" + std::to_string(f.a) + "*";
        den += "T";
        if (f.b != 1)
            den += "^" + std::to_string(f.b);
        den += ")";
    }
    return "(" + num + ")/" + den;
}

SeriesPrefix ds_expand(const DaggerSeries& h, int N)
{
    if (N < 0)
        throw std::invalid_argument("expansion order must be nonnegative");
    SeriesPrefix out(static_cast<std::size_t>(N) + 1);
    if (h.is_zero())
        return out;
    const int lo = std::min(0, h.numerator().begin()->first);
    std::vector<LaurentPoly> c(static_cast<std::size_t>(N - lo + 1));
    for (const auto& [e, v] : h.numerator())
        if (e <= N)
            c[static_cast<std::size_t>(e - lo)] = v;
    for (const auto& f : h.denominator())
        for (std::size_t k = static_cast<std::size_t>(f.b); k < c.size(); ++k)
            c[k].add_shifted(c[k - static_cast<std::size_t>(f.b)], f.a);
    for (int k = 0; k <= N; ++k)
        out[static_cast<std::size_t>(k)] = std::move(c[static_cast<std::size_t>(k - lo)]);
    return out;
}

SeriesDegree ds_degree(const DaggerSeries& h)
{
    if (h.is_zero())
        return std::nullopt;
    int sum_b = 0;
    for (const auto& f : h.denominator())
        sum_b += f.b;
    return h.numerator().rbegin()->first - sum_b;
}

std::optional<LaurentPoly> ds_limit(const DaggerSeries& h)
{
    const SeriesDegree deg = ds_degree(h);
    if (!deg || *deg < 0)
        return LaurentPoly();
    if (*deg > 0)
        return std::nullopt;
    int sum_a = 0;
    for (const auto& f : h.denominator())
        sum_a += f.a;
    LaurentPoly p = h.numerator().rbegin()->second.shifted(-sum_a);
    if (h.denominator().size() % 2 == 1)
        p = -p;
    return p;
}

DaggerSeries ds_hadamard(const DaggerSeries& h, const DaggerSeries& g)
{
    if (h.is_zero() || g.is_zero())
        return {};
    if (h.numerator().begin()->first < 0 || g.numerator().begin()->first < 0)
        throw std::invalid_argument("Hadamard product needs power series (no negative T-exponents)");
    std::vector<DenFactor> den;
    for (const auto& f : h.denominator())
        for (const auto& f2 : g.denominator()) {
            const int l = std::lcm(f.b, f2.b);
            den.push_back({f.a * (l / f.b) + f2.a * (l / f2.b), l});
        }
    int den_degree = 0;
    for (const auto& f : den)
        den_degree += f.b;
    const int bound = std::max({*ds_degree(h), *ds_degree(g), -1}) + den_degree;
    const int N = bound + den_degree + 8;
    const SeriesPrefix a = ds_expand(h, N);
    const SeriesPrefix b = ds_expand(g, N);
    std::vector<LaurentPoly> c(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k)
        c[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)];
    // Multiply the coefficient sequence by the candidate denominator.
    for (const auto& f : den)
        for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(f.b);)
            c[k].subtract_shifted(c[k - static_cast<std::size_t>(f.b)], f.a);
    TPoly num;
    for (int k = 0; k <= N; ++k) {
        const auto& v = c[static_cast<std::size_t>(k)];
        if (v.is_zero())
            continue;
        if (k > bound)
            throw FitFailure("Hadamard product verification failed at T^" + std::to_string(k));
        num.emplace(k, v);
    }
    return DaggerSeries(std::move(num), std::move(den)).normalized();
}

std::string to_string(const SeriesPrefix& prefix)
{
    std::string out = "[";
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (i)
            out += ", ";
        out += prefix[i].to_string();
    }
    return out + "]";
}

} // namespace motzeta

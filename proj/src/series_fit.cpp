#include "motzeta/series_fit.hpp"

#include "motzeta/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

namespace motzeta {

namespace {

constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kPoint = 1000000007;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kModulus);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t s = a + b;
    return s >= kModulus ? s - kModulus : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b)
{
    return a >= b ? a - b : a + kModulus - b;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = mulmod(r, base);
        base = mulmod(base, base);
        e >>= 1;
    }
    return r;
}

std::uint64_t inverse(std::uint64_t a) { return powmod(a, kModulus - 2); }

std::uint64_t point_power(int a)
{
    static const std::uint64_t inv = inverse(kPoint);
    return a >= 0 ? powmod(kPoint, static_cast<std::uint64_t>(a)) : powmod(inv, static_cast<std::uint64_t>(-a));
}

std::vector<std::uint64_t> fingerprint(const SeriesPrefix& prefix)
{
    static const std::uint64_t inv = inverse(kPoint);
    std::vector<std::uint64_t> out;
    out.reserve(prefix.size());
    for (const auto& c : prefix)
        out.push_back(c.eval_mod(kPoint, inv, kModulus));
    return out;
}

bool fits_modular(std::vector<std::uint64_t> c, const std::vector<DenFactor>& den, int bound)
{
    for (const auto& f : den) {
        const std::uint64_t ua = point_power(f.a);
        for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(f.b);)
            c[k] = submod(c[k], mulmod(ua, c[k - static_cast<std::size_t>(f.b)]));
    }
    for (std::size_t k = static_cast<std::size_t>(std::max(bound + 1, 0)); k < c.size(); ++k)
        if (c[k] != 0)
            return false;
    return true;
}

std::optional<DaggerSeries> fit_exact(const SeriesPrefix& prefix, const std::vector<DenFactor>& den, int bound)
{
    std::vector<LaurentPoly> c(prefix);
    for (const auto& f : den)
        for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(f.b);)
            c[k].subtract_shifted(c[k - static_cast<std::size_t>(f.b)], f.a);
    TPoly num;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero())
            continue;
        if (static_cast<int>(k) > bound)
            return std::nullopt;
        num.emplace(static_cast<int>(k), std::move(c[k]));
    }
    return DaggerSeries(std::move(num), den);
}

struct Group {
    DenFactor factor;
    int multiplicity;
};

std::vector<DenFactor> materialize(const std::vector<Group>& groups, const std::vector<int>& counts)
{
    std::vector<DenFactor> out;
    for (std::size_t i = 0; i < groups.size(); ++i)
        out.insert(out.end(), static_cast<std::size_t>(counts[i]), groups[i].factor);
    return out;
}

} // namespace

std::optional<DaggerSeries> ds_fit(const SeriesPrefix& prefix, const std::vector<DenFactor>& candidates,
                                   const FitOptions& options)
{
    if (prefix.empty())
        throw FitFailure("empty prefix");
    const int N = static_cast<int>(prefix.size()) - 1;
    int sum_b = 0;
    for (const auto& f : candidates) {
        if (f.b < 1)
            throw std::invalid_argument("candidate factor needs b >= 1");
        sum_b += f.b;
    }
    const int bound = options.degree_bound.value_or(N - sum_b - options.margin);
    if (bound < -1 || N < sum_b + bound + options.margin)
        throw FitFailure("prefix of length " + std::to_string(N + 1) + " is too short for " +
                         std::to_string(candidates.size()) + " candidate factors (sum of b = " +
                         std::to_string(sum_b) + ")");

    std::vector<DenFactor> sorted = candidates;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Group> groups;
    for (const auto& f : sorted) {
        if (!groups.empty() && groups.back().factor == f)
            ++groups.back().multiplicity;
        else
            groups.push_back({f, 1});
    }
    const auto modular = fingerprint(prefix);

    std::uint64_t combos = 1;
    for (const auto& g : groups) {
        combos *= static_cast<std::uint64_t>(g.multiplicity + 1);
        if (combos > (1U << 14))
            break;
    }

    if (combos <= (1U << 14)) {
        std::vector<std::vector<DenFactor>> subsets;
        std::vector<int> counts(groups.size(), 0);
        while (true) {
            subsets.push_back(materialize(groups, counts));
            std::size_t i = 0;
            while (i < groups.size() && counts[i] == groups[i].multiplicity)
                counts[i++] = 0;
            if (i == groups.size())
                break;
            ++counts[i];
        }
        auto key = [](const std::vector<DenFactor>& s) {
            int b = 0;
            for (const auto& f : s)
                b += f.b;
            return std::make_tuple(b, s.size(), std::cref(s));
        };
        std::sort(subsets.begin(), subsets.end(),
                  [&](const auto& x, const auto& y) { return key(x) < key(y); });
        for (const auto& s : subsets)
            if (fits_modular(modular, s, bound))
                if (auto fit = fit_exact(prefix, s, bound))
                    return fit;
        return std::nullopt;
    }

    // Greedy removal for large candidate sets, largest factors first.
    std::vector<int> counts;
    for (const auto& g : groups)
        counts.push_back(g.multiplicity);
    if (!fits_modular(modular, materialize(groups, counts), bound))
        return std::nullopt;
    std::vector<std::size_t> order(groups.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& fx = groups[x].factor;
        const auto& fy = groups[y].factor;
        return std::make_tuple(fx.b, std::abs(fx.a), fx.a) > std::make_tuple(fy.b, std::abs(fy.a), fy.a);
    });
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i : order) {
            while (counts[i] > 0) {
                --counts[i];
                if (fits_modular(modular, materialize(groups, counts), bound)) {
                    changed = true;
                    continue;
                }
                ++counts[i];
                break;
            }
        }
    }
    return fit_exact(prefix, materialize(groups, counts), bound);
}

std::vector<DenFactor> infer_candidates(const SeriesPrefix& prefix, int max_b, int max_abs_a)
{
    const auto s = fingerprint(prefix);
    // Berlekamp-Massey over Z/p.
    std::vector<std::uint64_t> C{1}, B{1};
    std::size_t L = 0, shift = 1;
    std::uint64_t b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        std::uint64_t d = s[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i)
            d = addmod(d, mulmod(C[i], s[n - i]));
        if (d == 0) {
            ++shift;
            continue;
        }
        const std::uint64_t coef = mulmod(d, inverse(b));
        std::vector<std::uint64_t> T = C;
        if (C.size() < B.size() + shift)
            C.resize(B.size() + shift, 0);
        for (std::size_t i = 0; i < B.size(); ++i)
            C[i + shift] = submod(C[i + shift], mulmod(coef, B[i]));
        if (2 * L <= n) {
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    while (C.size() > 1 && C.back() == 0)
        C.pop_back();

    std::vector<DenFactor> out;
    auto try_divide = [&](int a, int bb) {
        const std::size_t step = static_cast<std::size_t>(bb);
        if (C.size() <= step)
            return false;
        const std::uint64_t ua = point_power(a);
        std::vector<std::uint64_t> q(C.size() - step, 0);
        for (std::size_t k = 0; k < q.size(); ++k)
            q[k] = addmod(C[k], k >= step ? mulmod(ua, q[k - step]) : 0);
        for (std::size_t k = q.size(); k < C.size(); ++k) {
            std::uint64_t r = addmod(C[k], k >= step ? mulmod(ua, q[k - step]) : 0);
            if (k < q.size())
                r = submod(r, q[k]);
            if (r != 0)
                return false;
        }
        C = std::move(q);
        return true;
    };
    for (int bb = max_b; bb >= 1; --bb)
        for (int mag = 0; mag <= max_abs_a; ++mag)
            for (int a : {mag, -mag}) {
                while (try_divide(a, bb))
                    out.push_back({a, bb});
                if (mag == 0)
                    break;
            }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace motzeta

#include "motzeta/jet_system.hpp"

#include "motzeta/errors.hpp"

#include <map>

namespace motzeta {

namespace {

using JetExps = std::vector<int>;
using JetPoly = std::map<JetExps, Rational>;
/// Truncated power series in t with JetPoly coefficients; index = t-degree.
using Series = std::vector<JetPoly>;

void accumulate(JetPoly& acc, const JetExps& e, const Rational& c)
{
    if (c == 0)
        return;
    auto& slot = acc[e];
    slot += c;
    if (slot == 0)
        acc.erase(e);
}

Series multiply(const Series& a, const Series& b, int m)
{
    Series out(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; i + j <= m; ++j)
            for (const auto& [e1, c1] : a[static_cast<std::size_t>(i)])
                for (const auto& [e2, c2] : b[static_cast<std::size_t>(j)]) {
                    JetExps e = e1;
                    for (std::size_t k = 0; k < e.size(); ++k)
                        e[k] += e2[k];
                    accumulate(out[static_cast<std::size_t>(i + j)], e, c1 * c2);
                }
    return out;
}

/// f(x + y) with rational coefficients, as a map from exponent vectors.
std::map<std::vector<int>, Rational> translate(const MultiPoly& f, const std::vector<Rational>& x)
{
    const auto n = static_cast<std::size_t>(f.n_vars());
    std::map<std::vector<int>, Rational> out;
    for (const auto& [e, c] : f.terms()) {
        // prod_i (x_i + y_i)^{e_i} = prod_i sum_k binom(e_i, k) x_i^{e_i-k} y_i^k
        std::map<std::vector<int>, Rational> partial{{std::vector<int>(n, 0), Rational(c)}};
        for (std::size_t i = 0; i < n; ++i) {
            std::map<std::vector<int>, Rational> next;
            for (const auto& [pe, pc] : partial)
                for (int k = 0; k <= e[i]; ++k) {
                    Integer binom;
                    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e[i]), static_cast<unsigned long>(k));
                    Rational xp = 1;
                    for (int t = 0; t < e[i] - k; ++t)
                        xp *= x[i];
                    const Rational v = pc * Rational(binom) * xp;
                    if (v == 0)
                        continue;
                    auto ne = pe;
                    ne[i] = k;
                    next[ne] += v;
                }
            partial = std::move(next);
        }
        for (const auto& [pe, pc] : partial)
            out[pe] += pc;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

JetConstraintSystem build_jet_system(const MultiPoly& f, const std::vector<Rational>& x, int m)
{
    if (m < 1)
        throw std::invalid_argument("jet order must be positive");
    const int n = f.n_vars();
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("base point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                                   std::to_string(n) + " variables");
    if (f.evaluate(x) != 0)
        throw NonvanishingError("f does not vanish at the base point (f(x) = " + to_string(f.evaluate(x)) + ")");

    const auto translated = translate(f, x);
    const auto nm = static_cast<std::size_t>(n * m);
    const auto len = static_cast<std::size_t>(m) + 1;

    // Y_i = sum_j a_{i,j} t^j and its powers, built on demand.
    std::vector<std::vector<Series>> powers(static_cast<std::size_t>(n));
    auto power = [&](int i, int e) -> const Series& {
        auto& list = powers[static_cast<std::size_t>(i)];
        if (list.empty()) {
            Series one(len);
            one[0][JetExps(nm, 0)] = 1;
            list.push_back(std::move(one));
        }
        while (static_cast<int>(list.size()) <= e) {
            Series y(len);
            for (int j = 1; j <= m; ++j) {
                JetExps v(nm, 0);
                v[static_cast<std::size_t>(JetConstraintSystem::var_index(i + 1, j, n))] = 1;
                y[static_cast<std::size_t>(j)][v] = 1;
            }
            list.push_back(multiply(list.back(), y, m));
        }
        return list[static_cast<std::size_t>(e)];
    };

    Series total(len);
    for (const auto& [e, c] : translated) {
        int degree = 0;
        for (int k : e)
            degree += k;
        if (degree > m)
            continue; // every factor carries at least t^1
        Series term(len);
        term[0][JetExps(nm, 0)] = c;
        for (int i = 0; i < n; ++i)
            if (e[static_cast<std::size_t>(i)] > 0)
                term = multiply(term, power(i, e[static_cast<std::size_t>(i)]), m);
        for (std::size_t k = 0; k < len; ++k)
            for (const auto& [je, jc] : term[k])
                accumulate(total[k], je, jc);
    }

    JetConstraintSystem sys;
    sys.n = n;
    sys.m = m;
    for (int k = 1; k <= m; ++k) {
        const auto& g = total[static_cast<std::size_t>(k)];
        Integer den = 1;
        for (const auto& [je, jc] : g)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), jc.get_den_mpz_t());
        std::vector<JetMonomial> level;
        for (const auto& [je, jc] : g) {
            JetMonomial mono;
            const Rational scaled = jc * Rational(den);
            mono.coeff = scaled.get_num();
            for (std::size_t v = 0; v < nm; ++v)
                if (je[v] > 0)
                    mono.vars.emplace_back(static_cast<int>(v), je[v]);
            level.push_back(std::move(mono));
        }
        sys.levels.push_back(std::move(level));
        sys.targets.push_back(k == m ? den : Integer(0));
        sys.cleared_denominator *= den;
    }
    return sys;
}

} // namespace motzeta

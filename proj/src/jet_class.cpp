#include "motzeta/jet_class.hpp"

#include "motzeta/finite_field.hpp"
#include "motzeta/series_fit.hpp"

namespace motzeta {

namespace {

Integer power_of(const Integer& q, int e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

/// Minimal recurrence 1 + c_1 x + ... + c_L x^L of a rational sequence.
std::vector<Rational> berlekamp_massey(const std::vector<Rational>& s, int& length)
{
    std::vector<Rational> C{1}, B{1};
    int L = 0;
    std::size_t shift = 1;
    Rational b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rational d = s[n];
        for (int i = 1; i <= L && static_cast<std::size_t>(i) < C.size(); ++i)
            d += C[static_cast<std::size_t>(i)] * s[n - static_cast<std::size_t>(i)];
        if (d == 0) {
            ++shift;
            continue;
        }
        const Rational coef = d / b;
        const std::vector<Rational> T = C;
        if (C.size() < B.size() + shift)
            C.resize(B.size() + shift, Rational(0));
        for (std::size_t i = 0; i < B.size(); ++i)
            C[i + shift] -= coef * B[i];
        if (2 * L <= static_cast<int>(n)) {
            L = static_cast<int>(n) + 1 - L;
            B = T;
            b = d;
            shift = 1;
        } else {
            ++shift;
        }
    }
    C.resize(static_cast<std::size_t>(L) + 1, Rational(0));
    length = L;
    return C;
}

std::optional<FrobeniusRun> frobenius_run(const JetConstraintSystem& sys, std::uint32_t p, const CountOptions& options)
{
    FrobeniusRun run;
    run.p = p;
    std::vector<Rational> seq;
    std::uint64_t q = 1;
    for (int r = 1;; ++r) {
        q *= p;
        if (q > kMaxFieldSize)
            return std::nullopt;
        run.counts.push_back(count_points(sys, *FiniteField::get(p, r), options));
        seq.emplace_back(run.counts.back());
        int L = 0;
        const auto C = berlekamp_massey(seq, L);
        if (r < 2 * L + 2 || L == 0 || C[static_cast<std::size_t>(L)] == 0)
            continue;
        // N_L + c_1 N_{L-1} + ... + c_L N_0 = 0
        Rational acc = seq[static_cast<std::size_t>(L) - 1];
        for (int i = 1; i < L; ++i)
            acc += C[static_cast<std::size_t>(i)] * seq[static_cast<std::size_t>(L - i) - 1];
        const Rational n0 = -acc / C[static_cast<std::size_t>(L)];
        if (n0.get_den() != 1)
            return std::nullopt;
        run.recurrence_length = L;
        run.extrapolated = n0.get_num();
        return run;
    }
}

} // namespace

std::optional<ClassPoly> interpolate_class(const CountTable& table, int degree_bound, int absent)
{
    const auto need = static_cast<std::size_t>(degree_bound) + 1;
    if (degree_bound < 0 || table.rows.size() < need)
        return std::nullopt;
    std::vector<Rational> xs, ys;
    for (const auto& [q, count] : table.rows) {
        const Integer scale = power_of(q, absent);
        if (count % scale != 0)
            return std::nullopt;
        xs.emplace_back(q);
        ys.emplace_back(count / scale);
    }
    // Newton divided differences on the first `need` points.
    std::vector<Rational> dd(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(need));
    for (std::size_t level = 1; level < need; ++level)
        for (std::size_t i = need - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    std::vector<Rational> coeffs(need, Rational(0));
    std::vector<Rational> basis{Rational(1)}; // prod_{j<k} (x - x_j)
    for (std::size_t k = 0; k < need; ++k) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            coeffs[i] += dd[k] * basis[i];
        std::vector<Rational> next(basis.size() + 1, Rational(0));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            next[i + 1] += basis[i];
            next[i] -= xs[k] * basis[i];
        }
        basis = std::move(next);
    }
    std::vector<LaurentPoly::Term> terms;
    for (std::size_t i = 0; i < need; ++i) {
        if (coeffs[i].get_den() != 1)
            return std::nullopt;
        terms.emplace_back(static_cast<int>(i) + absent, coeffs[i].get_num());
    }
    ClassPoly out{LaurentPoly::from_terms(terms), degree_bound};
    for (const auto& [q, count] : table.rows) {
        const Rational v = out.poly.eval_at(q);
        if (v != Rational(count))
            return std::nullopt;
    }
    return out;
}

std::vector<std::uint32_t> select_primes(const JetConstraintSystem& sys, int total_degree, int modulus, std::size_t count)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 2; out.size() < count; ++q) {
        if (q > kMaxFieldSize)
            throw ResourceLimit("ran out of usable primes");
        if (!is_prime(q) || static_cast<int>(q) <= total_degree)
            continue;
        if (modulus > 1 && q % static_cast<std::uint32_t>(modulus) != 1)
            continue;
        bool bad = mpz_divisible_ui_p(sys.cleared_denominator.get_mpz_t(), q) != 0;
        for (const auto& level : sys.levels)
            for (const auto& mono : level)
                bad = bad || mpz_divisible_ui_p(mono.coeff.get_mpz_t(), q) != 0;
        if (!bad)
            out.push_back(q);
    }
    return out;
}

int class_degree_bound(const JetConstraintSystem& sys)
{
    return std::max(sys.num_vars() - absent_variable_count(sys) - 1, 0);
}

JetResult jet_class(const MultiPoly& f, const std::vector<Rational>& x, int m, const JetConfig& cfg)
{
    const JetConstraintSystem sys = build_jet_system(f, x, m);
    JetResult result;
    result.m = m;
    result.degree_bound = class_degree_bound(sys);
    const int absent = absent_variable_count(sys);
    const auto n_primes = static_cast<std::size_t>(cfg.primes > 0 ? cfg.primes : result.degree_bound + 3);
    for (std::uint32_t q : select_primes(sys, f.total_degree(), cfg.prime_modulus, n_primes))
        result.table.rows.emplace_back(Integer(q), count_points(sys, q, cfg.count));
    if (auto cls = interpolate_class(result.table, result.degree_bound, absent)) {
        result.class_poly = cls->poly;
        result.chi_c = cls->poly.eval_at_one();
        result.route = "interpolation";
        return result;
    }
    result.route = "failed";
    if (!cfg.frobenius_fallback)
        return result;
    // Two independent characteristics must agree on the extrapolated count.
    for (std::uint32_t p : select_primes(sys, f.total_degree(), 1, 2)) {
        auto run = frobenius_run(sys, p, cfg.count);
        if (!run)
            return result;
        result.frobenius.push_back(std::move(*run));
    }
    if (result.frobenius.size() == 2 && result.frobenius[0].extrapolated == result.frobenius[1].extrapolated) {
        result.chi_c = result.frobenius[0].extrapolated;
        result.route = "frobenius";
    }
    return result;
}

Integer lefschetz_via_jets(const MultiPoly& f, const std::vector<Rational>& x, int m, const JetConfig& cfg)
{
    JetResult r = jet_class(f, x, m, cfg);
    if (!r.chi_c)
        throw InterpolationFailure("point counts for m = " + std::to_string(m) + " are not polynomial in q", std::move(r));
    return *r.chi_c;
}

SeriesPrefix zeta_via_jets(const MultiPoly& f, const std::vector<Rational>& x, int d, int M, const JetConfig& cfg)
{
    SeriesPrefix out(static_cast<std::size_t>(M) + 1);
    JetConfig local = cfg;
    local.frobenius_fallback = false;
    for (int m = 1; m <= M; ++m) {
        JetResult r = jet_class(f, x, m, local);
        if (!r.class_poly)
            throw InterpolationFailure("no class polynomial for m = " + std::to_string(m), std::move(r));
        out[static_cast<std::size_t>(m)] = r.class_poly->shifted(-m * d);
    }
    return out;
}

MilnorFiber milnor_fiber_limit(const SeriesPrefix& prefix, const std::vector<DenFactor>& candidates)
{
    auto fit = ds_fit(prefix, candidates);
    if (!fit)
        throw FitFailure("no rational form with the given denominator candidates fits the prefix");
    MilnorFiber out;
    out.zeta = fit->normalized();
    const auto lim = ds_limit(out.zeta);
    if (!lim)
        throw FitFailure("fitted series has positive degree; limit undefined");
    out.S = -*lim;
    out.chi = out.S.eval_at_one();
    return out;
}

} // namespace motzeta

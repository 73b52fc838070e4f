#include "helpers.hpp"

#include "../oracles.hpp"

#include "motzeta/gamma.hpp"
#include "motzeta/jet_class.hpp"
#include "motzeta/series_fit.hpp"

#include <doctest.h>

#include <random>

using namespace motzeta;
using namespace motzeta::test;

TEST_CASE("property: hadamard expands to the termwise product")
{
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
        const DaggerSeries h = oracle::random_series(rng), g = oracle::random_series(rng);
        const DaggerSeries prod = ds_hadamard(h, g);
        CHECK(oracle::hadamard_matches(h, g, prod, 40));
    }
}

TEST_CASE("property: fit then expand reproduces the prefix")
{
    std::mt19937 rng(12);
    for (int i = 0; i < 30; ++i) {
        const DaggerSeries h = oracle::random_series(rng);
        int sum_b = 0;
        for (const auto& f : h.denominator())
            sum_b += f.b;
        const int N = 3 * sum_b + 8;
        const SeriesPrefix prefix = ds_expand(h, N);
        const auto fit = ds_fit(prefix, h.denominator());
        REQUIRE(fit);
        CHECK(*fit == h);
        CHECK(ds_expand(*fit, N) == prefix);
    }
}

TEST_CASE("property: addition and multiplication agree with expansions")
{
    std::mt19937 rng(13);
    for (int i = 0; i < 30; ++i) {
        const DaggerSeries h = oracle::random_series(rng), g = oracle::random_series(rng);
        const auto a = ds_expand(h, 20), b = ds_expand(g, 20);
        const auto sum = ds_expand(h + g, 20), prod = ds_expand(h * g, 20);
        for (std::size_t k = 0; k <= 20; ++k) {
            CHECK(sum[k] == a[k] + b[k]);
            LaurentPoly conv;
            for (std::size_t j = 0; j <= k; ++j)
                conv += a[j] * b[k - j];
            CHECK(prod[k] == conv);
        }
    }
}

TEST_CASE("property: chi is additive and decomposition independent")
{
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> end(-12, 12), flag(0, 1);
    for (int i = 0; i < 60; ++i) {
        int a = end(rng), b = end(rng), c = end(rng);
        if (a > b)
            std::swap(a, b);
        if (a == b)
            ++b;
        if (c <= b)
            c = b + 1;
        const bool open_a = flag(rng), open_c = flag(rng), mid_left = flag(rng);
        const RationalCell left = interval(q(a, 4), open_a, q(b, 4), !mid_left);
        const RationalCell right = interval(q(b, 4), mid_left, q(c, 4), open_c);
        const long lhs = chi(set_of({left, right}));
        CHECK(lhs == chi(set_of({left})) + chi(set_of({right})));
        CHECK(lhs == oracle::interval_chi(q(a, 4), open_a, q(c, 4), open_c));
        CHECK(lhs == chi(decompose_open(set_of({left, right}))));
    }
}

TEST_CASE("property: tilde_alpha equals alpha_m on bounded boxes")
{
    std::mt19937 rng(15);
    std::uniform_int_distribution<int> end(-24, 24), flag(0, 1), dim(1, 2), mm(1, 4);
    for (int i = 0; i < 40; ++i) {
        const int n = dim(rng);
        std::vector<Interval> box;
        for (int k = 0; k < n; ++k) {
            int lo = end(rng), hi = end(rng);
            if (lo > hi)
                std::swap(lo, hi);
            Interval iv;
            iv.lower = q(lo, 12);
            iv.upper = q(hi, 12);
            iv.lower_strict = flag(rng);
            iv.upper_strict = flag(rng) && lo != hi;
            if (lo == hi)
                iv.lower_strict = false;
            box.push_back(iv);
        }
        const PolySet s{n, {box_cell(box)}};
        const int m = mm(rng);
        const LaurentPoly a = alpha_m(s, m);
        TPoly expected;
        for (const auto& [e, c] : a.terms())
            expected[e] = LaurentPoly(c);
        CHECK(tilde_alpha(s, m) == DaggerSeries::polynomial(expected));
        // divisibility by (T - 1)^n
        LaurentPoly r = a;
        for (int k = 0; k < n; ++k)
            CHECK_NOTHROW(r = r.divided_by_one_minus_power(1));
    }
}

TEST_CASE("property: pruned counts equal brute force")
{
    std::mt19937 rng(16);
    std::uniform_int_distribution<int> pick(0, 4);
    const std::uint32_t primes[] = {2, 3, 5, 7, 11};
    int checked = 0;
    while (checked < 15) {
        const std::uint32_t p = primes[pick(rng)];
        const int n = std::uniform_int_distribution<int>(1, 2)(rng);
        const int m = std::uniform_int_distribution<int>(1, 4)(rng);
        double space = 1;
        for (int i = 0; i < n * m; ++i)
            space *= p;
        if (space > 2e4)
            continue;
        const auto sys = build_jet_system(oracle::random_poly(rng, n, 3, 4), std::vector<Rational>(static_cast<std::size_t>(n), 0), m);
        const Integer expected(static_cast<unsigned long>(oracle::naive_count(sys, p)));
        CHECK(count_points(sys, p, {CountStrategy::LevelDfs, 1'000'000'000, 1}) == expected);
        CHECK(count_points(sys, p, {CountStrategy::Propagate, 1'000'000'000, 2}) == expected);
        ++checked;
    }
}

TEST_CASE("property: interpolated classes reproduce every count")
{
    for (const char* text : {"x1^2", "x1*x2", "x1^3", "x1^2 + x2^2", "x1*x2*x3"}) {
        const MultiPoly f = parse_poly(text);
        JetConfig cfg;
        cfg.prime_modulus = 12;
        for (int m = 1; m <= 4; ++m) {
            const JetResult r = jet_class(f, std::vector<Rational>(static_cast<std::size_t>(f.n_vars()), 0), m, cfg);
            REQUIRE(r.class_poly);
            for (const auto& [qq, n] : r.table.rows)
                CHECK(r.class_poly->eval_at(qq) == Rational(n));
        }
    }
}

#include "helpers.hpp"

#include "motzeta/errors.hpp"
#include "motzeta/jet_class.hpp"
#include "motzeta/multipoly.hpp"

#include <doctest.h>

using namespace motzeta;
using namespace motzeta::test;

namespace {

std::vector<Rational> origin(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)); }

} // namespace

TEST_CASE("parse_poly")
{
    const MultiPoly f = parse_poly("x1^2 + x2^3");
    CHECK(f.n_vars() == 2);
    CHECK(f.total_degree() == 3);
    CHECK(f.evaluate({q(2), q(1)}) == 5);

    CHECK(parse_poly("-(x1 - 2*x2)^2").evaluate({q(1), q(1)}) == -1);
    CHECK(parse_poly("x1*x2 - x2*x1").is_zero());
    CHECK(parse_poly("x1", 3).n_vars() == 3);

    try {
        parse_poly("x1 + * x2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_poly("x0"), ParseError);
    CHECK_THROWS_AS(parse_poly("x1^"), ParseError);
    CHECK_THROWS_AS(parse_poly("(x1"), ParseError);
    CHECK_THROWS_AS(parse_poly("y"), ParseError);
}

TEST_CASE("build_jet_system")
{
    const auto sq = build_jet_system(parse_poly("x1^2"), origin(1), 2);
    REQUIRE(sq.levels.size() == 2);
    CHECK(sq.levels[0].empty());
    REQUIRE(sq.levels[1].size() == 1);
    CHECK(sq.levels[1][0].coeff == 1);
    CHECK(sq.levels[1][0].vars == std::vector<std::pair<int, int>>{{0, 2}});
    CHECK(sq.targets == std::vector<Integer>{0, 1});

    const auto node = build_jet_system(parse_poly("x1*x2"), origin(2), 1);
    CHECK(node.levels[0].empty());
    CHECK(node.targets[0] == 1);

    const auto lin = build_jet_system(parse_poly("x1"), origin(1), 1);
    REQUIRE(lin.levels[0].size() == 1);
    CHECK(lin.levels[0][0].vars == std::vector<std::pair<int, int>>{{0, 1}});

    CHECK_THROWS_AS(build_jet_system(parse_poly("x1 + 1"), origin(1), 1), NonvanishingError);

    // level locality
    const auto cusp = build_jet_system(parse_poly("x1^2 + x2^3"), origin(2), 7);
    for (int k = 1; k <= 7; ++k)
        for (const auto& mono : cusp.levels[static_cast<std::size_t>(k - 1)]) {
            int weight = 0;
            for (const auto& [v, e] : mono.vars) {
                CHECK(cusp.level_of(v) <= k);
                weight += cusp.level_of(v) * e;
            }
            CHECK(weight == k);
        }
}

TEST_CASE("build_jet_system at a rational point")
{
    // f = (2 x1 - 1)^2 vanishes at 1/2; translated it is 4 y^2
    const auto sys = build_jet_system(parse_poly("4*x1^2 - 4*x1 + 1"), {q(1, 2)}, 2);
    REQUIRE(sys.levels[1].size() == 1);
    CHECK(sys.levels[1][0].coeff == 4);
    CHECK(count_points(sys, 5) == 10);

    const auto half = build_jet_system(parse_poly("x1^2 - x1*x2"), {q(1, 3), q(1, 3)}, 3);
    CHECK(half.cleared_denominator % 3 == 0);
    for (auto p : select_primes(half, 2, 1, 4))
        CHECK(p % 3 != 0);
}

TEST_CASE("count_points examples")
{
    const MultiPoly sq = parse_poly("x1^2");
    CHECK(count_points(build_jet_system(sq, origin(1), 2), 5) == 10);
    CHECK(count_points(build_jet_system(sq, origin(1), 1), 11) == 0);
    CHECK(count_points(build_jet_system(parse_poly("x1"), origin(1), 1), 7) == 1);

    // node: (m - 1)(q - 1) q^m
    const MultiPoly node = parse_poly("x1*x2");
    for (int m = 1; m <= 5; ++m)
        for (std::uint32_t p : {3U, 5U, 7U}) {
            Integer expected = Integer(m - 1) * Integer(p - 1);
            for (int i = 0; i < m; ++i)
                expected *= p;
            CHECK(count_points(build_jet_system(node, origin(2), m), p) == expected);
        }
}

TEST_CASE("count_points over extension fields")
{
    const auto sys = build_jet_system(parse_poly("x1^2 + x2^2"), origin(2), 2);
    // a^2 + b^2 = 1 has q - 1 points when -1 is a square, q + 1 otherwise
    CHECK(count_points(sys, *FiniteField::get(3, 2)) == Integer(8) * 81);
    CHECK(count_points(sys, 5) == Integer(4) * 25);
    CHECK(count_points(sys, 3) == Integer(4) * 9);
}

TEST_CASE("strategies and thread counts agree")
{
    const auto sys = build_jet_system(parse_poly("x1^2 + x2^3"), origin(2), 6);
    const Integer base = count_points(sys, 7, {CountStrategy::LevelDfs, 1'000'000'000, 1});
    CHECK(count_points(sys, 7, {CountStrategy::Propagate, 1'000'000'000, 1}) == base);
    CHECK(count_points(sys, 7, {CountStrategy::Propagate, 1'000'000'000, 4}) == base);
    CHECK(count_points(sys, 7, {CountStrategy::LevelDfs, 1'000'000'000, 3}) == base);
}

TEST_CASE("node budget")
{
    const auto sys = build_jet_system(parse_poly("x1^2 + x2^3"), origin(2), 6);
    CHECK_THROWS_AS(count_points(sys, 13, {CountStrategy::LevelDfs, 100, 1}), ResourceLimit);
}

TEST_CASE("interpolate_class")
{
    CountTable t{{{5, 10}, {7, 14}, {11, 22}, {13, 26}}};
    auto c = interpolate_class(t, 2);
    REQUIRE(c);
    CHECK(c->poly == lp({{1, 2}}));

    CountTable zeros{{{5, 0}, {7, 0}, {11, 0}}};
    c = interpolate_class(zeros, 1);
    REQUIRE(c);
    CHECK(c->poly.is_zero());

    CountTable ones{{{2, 1}, {3, 1}, {5, 1}, {7, 1}}};
    c = interpolate_class(ones, 2);
    REQUIRE(c);
    CHECK(c->poly == LaurentPoly(1));

    CountTable bad{{{5, 10}, {7, 14}, {11, 23}, {13, 26}}};
    CHECK_FALSE(interpolate_class(bad, 2));
    CountTable half{{{3, 1}, {5, 2}, {7, 3}}};
    CHECK_FALSE(interpolate_class(half, 2));
    CHECK_FALSE(interpolate_class(t, 5));
}

TEST_CASE("lefschetz_via_jets examples")
{
    CHECK(lefschetz_via_jets(parse_poly("x1^2"), origin(1), 2) == 2);
    CHECK(lefschetz_via_jets(parse_poly("x1^2"), origin(1), 1) == 0);
    CHECK(lefschetz_via_jets(parse_poly("x1*x2"), origin(2), 3) == 0);
    CHECK(lefschetz_via_jets(parse_poly("x1"), origin(1), 1) == 1);

    const JetResult r = jet_class(parse_poly("x1*x2"), origin(2), 3);
    REQUIRE(r.class_poly);
    CHECK(*r.class_poly == lp({{4, 2}, {3, -2}}));
    for (const auto& [qq, n] : r.table.rows)
        CHECK(r.class_poly->eval_at(qq) == Rational(n));
}

TEST_CASE("non-polynomial counts take the Frobenius route")
{
    JetConfig cfg;
    cfg.prime_modulus = 3;
    const JetResult r = jet_class(parse_poly("x1^2 + x2^3"), origin(2), 6, cfg);
    CHECK_FALSE(r.class_poly);
    CHECK(r.route == "frobenius");
    REQUIRE(r.chi_c);
    CHECK(*r.chi_c == -1);

    cfg.frobenius_fallback = false;
    CHECK_THROWS_AS(lefschetz_via_jets(parse_poly("x1^2 + x2^3"), origin(2), 6, cfg), InterpolationFailure);
}

TEST_CASE("zeta_via_jets and milnor_fiber_limit")
{
    const auto sq = zeta_via_jets(parse_poly("x1^2"), origin(1), 1, 6);
    CHECK(sq == SeriesPrefix{0, 0, lp({{-1, 2}}), 0, lp({{-2, 2}}), 0, lp({{-3, 2}})});

    const auto lin = zeta_via_jets(parse_poly("x1"), origin(1), 1, 3);
    CHECK(lin == SeriesPrefix{0, lp({{-1, 1}}), lp({{-2, 1}}), lp({{-3, 1}})});

    const auto node = zeta_via_jets(parse_poly("x1*x2"), origin(2), 2, 4);
    for (int m = 1; m <= 4; ++m)
        CHECK(node[static_cast<std::size_t>(m)] == lp({{1, m - 1}, {0, 1 - m}}).shifted(-m));

    const auto sq10 = zeta_via_jets(parse_poly("x1^2"), origin(1), 1, 10);
    const MilnorFiber f2 = milnor_fiber_limit(sq10, {{-1, 2}});
    CHECK(f2.zeta == DaggerSeries(TPoly{{2, lp({{-1, 2}})}}, {{-1, 2}}));
    CHECK(f2.S == LaurentPoly(2));
    CHECK(f2.chi == 2);

    const auto lin8 = zeta_via_jets(parse_poly("x1"), origin(1), 1, 8);
    const MilnorFiber f1 = milnor_fiber_limit(lin8, {{-1, 1}, {0, 1}});
    CHECK(f1.zeta == DaggerSeries(TPoly{{1, lp({{-1, 1}})}}, {{-1, 1}}));
    CHECK(f1.S == LaurentPoly(1));
    CHECK(f1.chi == 1);

    const auto node8 = zeta_via_jets(parse_poly("x1*x2"), origin(2), 2, 8);
    const MilnorFiber f0 = milnor_fiber_limit(node8, {{-1, 1}, {-1, 1}});
    CHECK(f0.S == lp({{1, -1}, {0, 1}}));
    CHECK(f0.chi == 0);
}

#include "helpers.hpp"

#include "motzeta/errors.hpp"
#include "motzeta/json_io.hpp"
#include "motzeta/resolution.hpp"

#include <doctest.h>

using namespace motzeta;
using namespace motzeta::test;

namespace {

ResolutionData fixture(const std::string& name)
{
    return resolution_from_json(load_json_file(std::string(MOTZETA_FIXTURE_DIR) + "/" + name + "/resolution.json"));
}

LefschetzSequence seq_of(std::vector<long> v)
{
    LefschetzSequence s;
    for (long x : v)
        s.values.emplace_back(x);
    return s;
}

} // namespace

TEST_CASE("acampo_lefschetz on the cusp")
{
    const ResolutionData cusp = fixture("cusp");
    CHECK(acampo_lefschetz(cusp, 6) == -1);
    CHECK(acampo_lefschetz(cusp, 1) == 0);
    CHECK(acampo_lefschetz(cusp, 2) == 2);
    CHECK(acampo_sequence(cusp, 6).values == std::vector<Integer>{0, 2, 3, 2, 0, -1});
    CHECK_THROWS_AS(acampo_lefschetz(cusp, 0), std::invalid_argument);
}

TEST_CASE("acampo_lefschetz depends only on the divisor pattern")
{
    const ResolutionData cusp = fixture("cusp");
    for (int m = 1; m <= 12; ++m)
        CHECK(acampo_lefschetz(cusp, m) == acampo_lefschetz(cusp, m + 6));
}

TEST_CASE("resolution validation")
{
    ResolutionData r;
    r.d = 1;
    r.components = {{"E", 2, 1}, {"E", 3, 1}};
    CHECK_THROWS_AS(r.validate(), MalformedData);
    r.components = {{"E", 2, 1}};
    r.strata = {{{"F"}, 1, std::nullopt}};
    CHECK_THROWS_AS(r.validate(), MalformedData);
    r.strata = {{{"E"}, 1, std::nullopt}};
    CHECK_NOTHROW(r.validate());
    r.components[0].N = 0;
    CHECK_THROWS_AS(r.validate(), MalformedData);
}

TEST_CASE("denef_loeser_zeta")
{
    for (int a : {2, 3}) {
        const ResolutionData r = fixture(a == 2 ? "x1_sq" : "x1_cube");
        CHECK(denef_loeser_zeta(r) == DaggerSeries(TPoly{{a, lp({{-1, a}})}}, {{-1, a}}));
    }
    CHECK(denef_loeser_zeta(ResolutionData{2, {}, {}}).is_zero());
    CHECK_THROWS_AS(denef_loeser_zeta(fixture("cusp")), MissingClassError);

    // node: termwise (m - 1)(L - 1) L^-m
    const auto node = ds_expand(denef_loeser_zeta(fixture("node")), 8);
    for (int m = 1; m <= 8; ++m)
        CHECK(node[static_cast<std::size_t>(m)] == lp({{1, m - 1}, {0, 1 - m}}).shifted(-m));
}

TEST_CASE("quasi_unipotent_period")
{
    const Period cusp = quasi_unipotent_period(seq_of({0, 2, 3, 2, 0, -1, 0, 2, 3, 2, 0, -1}));
    CHECK(cusp.m0 == 6);
    CHECK(cusp.chi_milnor == -1);

    const Period sq = quasi_unipotent_period(seq_of({0, 2, 0, 2, 0, 2}));
    CHECK(sq.m0 == 2);
    CHECK(sq.chi_milnor == 2);

    const Period zero = quasi_unipotent_period(seq_of({0, 0, 0, 0}));
    CHECK(zero.m0 == 1);
    CHECK(zero.chi_milnor == 0);

    CHECK_THROWS_AS(quasi_unipotent_period(seq_of({0, 2, 3, 2, 0, -1})), NoPeriodError);
    CHECK_THROWS_AS(quasi_unipotent_period(seq_of({1, 2, 3, 4, 5, 6})), NoPeriodError);
}

TEST_CASE("fixtures are consistent")
{
    for (const char* name : {"x1_sq", "x1_cube", "smooth", "node", "a1", "cusp"}) {
        const ResolutionData r = fixture(name);
        const Json expected = load_json_file(std::string(MOTZETA_FIXTURE_DIR) + "/" + name + "/expected.json");
        std::vector<Integer> want;
        for (const auto& v : expected.at("lefschetz"))
            want.push_back(integer_from_json(v));
        CHECK(acampo_sequence(r, 6).values == want);
        CHECK(resolution_from_json(resolution_to_json(r)).strata.size() == r.strata.size());
    }
}

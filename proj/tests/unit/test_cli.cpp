#include "helpers.hpp"

#include "motzeta/commands.hpp"
#include "motzeta/errors.hpp"

#include <doctest.h>

#include <sstream>

using namespace motzeta;
using namespace motzeta::test;

namespace {

RunConfig config(const std::string& command, const std::string& poly, int lo, int hi)
{
    RunConfig cfg;
    cfg.command = command;
    cfg.poly = poly;
    cfg.m_lo = lo;
    cfg.m_hi = hi;
    return cfg;
}

std::string fixture_file(const std::string& name, const std::string& file)
{
    return std::string(MOTZETA_FIXTURE_DIR) + "/" + name + "/" + file;
}

} // namespace

TEST_CASE("json round trips")
{
    const LaurentPoly p = lp({{-3, 2}, {0, -1}, {5, 7}});
    CHECK(laurent_from_json(laurent_to_json(p)) == p);
    CHECK(laurent_to_json(p).dump() == "[[-3,2],[0,-1],[5,7]]");

    const Integer huge("123456789012345678901234567890");
    CHECK(integer_to_json(huge).is_string());
    CHECK(integer_from_json(integer_to_json(huge)) == huge);

    const DaggerSeries h(TPoly{{2, lp({{-1, 2}})}, {5, lp({{0, 1}, {1, -1}})}}, {{-1, 2}, {0, 3}});
    const DaggerSeries back = series_from_json(series_to_json(h));
    CHECK(back.numerator() == h.numerator());
    CHECK(back.denominator() == h.denominator());
    CHECK(series_to_json(back) == series_to_json(h));

    PolySet s;
    s.dim = 2;
    RationalCell c;
    c.dim = 2;
    c.lt.push_back({{q(1, 2), q(-3)}, q(7, 12)});
    c.eq.push_back({{q(1), q(1)}, q(0)});
    s.cells.push_back(c);
    CHECK(polyset_from_json(polyset_to_json(s)) == s);

    const Json report = lefschetz_report(config("lefschetz", "x1^2", 1, 3));
    CHECK(parse_json_text(report.dump()) == report);
}

TEST_CASE("json parse errors")
{
    CHECK_THROWS_AS(parse_json_text("{\"d\": "), ParseError);
    CHECK_THROWS_AS(resolution_from_json(parse_json_text("{\"d\": 1}")), ParseError);
    CHECK_THROWS_AS(resolution_from_json(parse_json_text(
                        R"({"d":1,"components":[{"id":"E","N":2,"nu":1}],"strata":[{"ids":["X"],"chi":1}]})")),
                    ParseError);
    CHECK_THROWS_AS(polyset_from_json(parse_json_text(R"({"dim":1,"cells":[{"le":[[1,2,3]]}]})")), ParseError);
    CHECK_THROWS_AS(rational_from_json(parse_json_text("\"1/0\"")), ParseError);
    CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("m-range and point parsing")
{
    CHECK(parse_m_range("1..6") == std::pair{1, 6});
    CHECK(parse_m_range("3") == std::pair{3, 3});
    CHECK_THROWS_AS(parse_m_range("6..1"), ParseError);
    CHECK_THROWS_AS(parse_m_range("a..b"), ParseError);
    CHECK_THROWS_AS(parse_m_range("0..2"), ParseError);
    CHECK(parse_point("", 2) == std::vector<Rational>{0, 0});
    CHECK(parse_point("1/2, -3", 2) == std::vector<Rational>{q(1, 2), q(-3)});
    CHECK_THROWS_AS(parse_point("1", 2), ParseError);
}

TEST_CASE("lefschetz command")
{
    std::ostringstream out, err;
    RunConfig cfg = config("lefschetz", "x1^2", 1, 2);
    cfg.json = true;
    CHECK(run_command(cfg, out, err) == kExitOk);
    const Json r = parse_json_text(out.str());
    REQUIRE(r["rows"].size() == 2);
    CHECK(r["rows"][0]["chi_c"] == 0);
    CHECK(r["rows"][1]["chi_c"] == 2);
    CHECK(r["rows"][1]["class"] == Json::parse("[[1,2]]"));

    const Json smooth = lefschetz_report(config("lefschetz", "x1", 1, 1));
    CHECK(smooth["rows"][0]["chi_c"] == 1);

    RunConfig cusp = config("lefschetz", "", 1, 6);
    apply_fixture(cusp, MOTZETA_FIXTURE_DIR, "cusp");
    const Json rc = lefschetz_report(cusp);
    CHECK(rc["status"] == "AGREE");
    std::vector<long> got;
    for (const auto& row : rc["rows"])
        got.push_back(row["chi_c"].get<long>());
    CHECK(got == std::vector<long>{0, 2, 3, 2, 0, -1});
}

TEST_CASE("disagreement exits with 3")
{
    // x1^3 against the x1^2 resolution
    RunConfig cfg = config("lefschetz", "x1^3", 1, 3);
    cfg.resolution = fixture_file("x1_sq", "resolution.json");
    std::ostringstream out, err;
    CHECK(run_command(cfg, out, err) == kExitDisagree);
    CHECK(out.str().find("DISAGREE") != std::string::npos);
}

TEST_CASE("error exit codes")
{
    std::ostringstream out, err;
    CHECK(run_command(config("lefschetz", "x1 +", 1, 1), out, err) == kExitConfig);
    CHECK(err.str().find("position") != std::string::npos);
    CHECK(run_command(config("lefschetz", "x1 + 1", 1, 1), out, err) == kExitConfig);
    CHECK(run_command(config("lefschetz", "x1", 2, 1), out, err) == kExitConfig);
    CHECK(run_command(config("frobnicate", "x1", 1, 1), out, err) == kExitConfig);

    RunConfig tight = config("lefschetz", "x1^2 + x2^3", 6, 6);
    tight.prime_modulus = 3;
    tight.node_budget = 50;
    tight.strategy = CountStrategy::LevelDfs;
    CHECK(run_command(tight, out, err) == kExitResource);
}

TEST_CASE("zeta command")
{
    const Json sq = zeta_report(config("zeta", "x1^2", 1, 1));
    REQUIRE(sq["status"] == "OK");
    CHECK(series_from_json(sq["zeta"]) == DaggerSeries(TPoly{{2, lp({{-1, 2}})}}, {{-1, 2}}));
    CHECK(sq["chi"] == 2);

    RunConfig lin = config("zeta", "x1", 1, 1);
    lin.terms = 4;
    const Json l = zeta_report(lin);
    REQUIRE(l["status"] == "OK");
    CHECK(l["chi"] == 1);

    RunConfig cube = config("zeta", "", 1, 1);
    apply_fixture(cube, MOTZETA_FIXTURE_DIR, "x1_cube");
    const Json c = zeta_report(cube);
    REQUIRE(c["status"] == "OK");
    CHECK(c["chi"] == 3);
    CHECK(c["period"]["verdict"] == "CONSISTENT");
    CHECK(c["resolution_zeta"]["verdict"] == "AGREE");
}

TEST_CASE("polytope and acampo commands")
{
    std::ostringstream out, err;
    RunConfig poly;
    poly.command = "polytope";
    poly.action = "chi";
    poly.json = true;
    poly.polytope = fixture_file("polytopes", "closed_unit_interval.json");
    CHECK(run_command(poly, out, err) == kExitOk);
    CHECK(parse_json_text(out.str())["chi"] == 1);

    out.str("");
    poly.action = "alpha";
    poly.polytope = fixture_file("polytopes", "origin.json");
    CHECK(run_command(poly, out, err) == kExitOk);
    CHECK(parse_json_text(out.str())["rows"][0]["alpha"] == "T - 1");

    out.str("");
    poly.action = "series";
    poly.polytope = fixture_file("polytopes", "open_unit_interval.json");
    CHECK(run_command(poly, out, err) == kExitOk);
    const Json s = parse_json_text(out.str());
    CHECK(s["verdict"] == "OK");
    CHECK(laurent_from_json(s["limit"]) == LaurentPoly(1));

    out.str("");
    RunConfig ac;
    ac.command = "acampo";
    ac.json = true;
    ac.resolution = fixture_file("cusp", "resolution.json");
    CHECK(run_command(ac, out, err) == kExitOk);
    const Json a = parse_json_text(out.str());
    CHECK(a["period"]["m0"] == 6);
    CHECK(a["period"]["chi"] == -1);
    CHECK(a["euler_zeta_limit"] == -1);
}

#include "motzeta/commands.hpp"
#include "motzeta/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

#ifndef MOTZETA_FIXTURE_DIR
#define MOTZETA_FIXTURE_DIR "fixtures"
#endif

int main(int argc, char** argv)
{
    using namespace motzeta;
    CLI::App app{"Jet-space point counts, motivic zeta functions and monodromy cross-checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string m_range = "1";
    std::string fixture;
    std::string fixture_dir = MOTZETA_FIXTURE_DIR;
    std::string strategy = "propagate";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--resolution", cfg.resolution, "Resolution data (JSON)");
        sub->add_option("--fixture", fixture, "Named fixture: fills polynomial, resolution and prime modulus");
        sub->add_option("--fixture-dir", fixture_dir, "Fixture root directory");
        sub->add_flag("--json", cfg.json, "Emit JSON");
    };
    auto add_jets = [&](CLI::App* sub) {
        sub->add_option("-f,--poly", cfg.poly, "Polynomial in x1..xn, e.g. \"x1^2 + x2^3\"");
        sub->add_option("--at", cfg.at, "Base point, comma-separated rationals (default: origin)");
        sub->add_option("--primes", cfg.primes, "Number of primes for interpolation (default: degree bound + 3)");
        sub->add_option("--prime-modulus", cfg.prime_modulus, "Use primes q = 1 mod k (default: try 1, 4, 3, 12)");
        sub->add_option("--node-budget", cfg.node_budget, "Search node budget per count");
        sub->add_option("--strategy", strategy, "Counting strategy: propagate | dfs")
            ->check(CLI::IsMember({"propagate", "dfs"}));
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
        add_common(sub);
    };

    auto* lef = app.add_subcommand("lefschetz", "chi_c of jet spaces, cross-checked against A'Campo's formula");
    add_jets(lef);
    lef->add_option("-m,--m-range", m_range, "Range a..b of jet orders");

    auto* zeta = app.add_subcommand("zeta", "Motivic zeta function, Milnor fiber and period check");
    add_jets(zeta);
    zeta->add_option("-M,--terms", cfg.terms, "Number of series terms");

    auto* poly = app.add_subcommand("polytope", "Euler characteristics and zeta series of polyhedral sets");
    poly->add_option("action", cfg.action, "chi | alpha | series")->required()->check(CLI::IsMember({"chi", "alpha", "series"}));
    poly->add_option("--polytope", cfg.polytope, "Polyhedral set (JSON)")->required();
    poly->add_option("--form", cfg.form, "Piecewise affine form (JSON file or inline JSON)");
    poly->add_option("-m,--m-range", m_range, "Range a..b of m for alpha");
    poly->add_option("-M,--terms", cfg.terms, "Number of series terms");
    poly->add_flag("--json", cfg.json, "Emit JSON");

    auto* acampo = app.add_subcommand("acampo", "Lefschetz numbers and period from resolution data");
    add_common(acampo);
    acampo->add_option("-M,--terms", cfg.terms, "Number of terms");

    auto* count = app.add_subcommand("count", "Raw point counts of jet spaces");
    add_jets(count);
    count->add_option("-m,--m-range", m_range, "Range a..b of jet orders");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.strategy = strategy == "dfs" ? CountStrategy::LevelDfs : CountStrategy::Propagate;
    try {
        std::tie(cfg.m_lo, cfg.m_hi) = parse_m_range(m_range);
        if (!fixture.empty())
            apply_fixture(cfg, fixture_dir, fixture);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return run_command(cfg, std::cout, std::cerr);
}

#pragma once

#include "motzeta/json_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace motzeta {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitDisagree = 3,
    kExitResource = 4,
};

struct RunConfig {
    std::string command;
    std::string poly;
    std::string at; // comma-separated rationals; empty means the origin
    int m_lo = 1;
    int m_hi = 1;
    int terms = 0;          // -M; 0 picks a default
    int primes = 0;         // 0 means degree bound + 3
    int prime_modulus = 0;  // 0 tries 1, 4, 3, 12 in turn
    std::uint64_t node_budget = 1'000'000'000;
    std::string resolution; // path to resolution JSON
    std::string polytope;   // path to polytope JSON
    std::string form;       // path to form JSON, or inline JSON text
    std::string action;     // polytope: chi | alpha | series
    CountStrategy strategy = CountStrategy::Propagate;
    bool json = false;
    int threads = 1;

    /// Throws ParseError on empty ranges or nonpositive budgets.
    void validate() const;
};

/// Parses "a..b" or "a".
std::pair<int, int> parse_m_range(const std::string& text);
std::vector<Rational> parse_point(const std::string& text, int n);

/// Fills poly, resolution and prime_modulus from fixtures/{name}/ when unset.
void apply_fixture(RunConfig& cfg, const std::string& fixture_dir, const std::string& name);

/// Each command writes its report to `out` and returns an exit code.
/// Errors propagate as exceptions; see exit_code_for.
int cmd_lefschetz(const RunConfig& cfg, std::ostream& out);
int cmd_zeta(const RunConfig& cfg, std::ostream& out);
int cmd_polytope(const RunConfig& cfg, std::ostream& out);
int cmd_acampo(const RunConfig& cfg, std::ostream& out);
int cmd_count(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.command and maps exceptions to exit codes, printing
/// the message to `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Report objects, exposed for tests.
Json lefschetz_report(const RunConfig& cfg);
Json zeta_report(const RunConfig& cfg);

} // namespace motzeta

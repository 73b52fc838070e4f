#include "motzeta/commands.hpp"

#include "motzeta/errors.hpp"
#include "motzeta/multipoly.hpp"
#include "motzeta/series_fit.hpp"

#include <filesystem>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

namespace motzeta {

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

struct Input {
    MultiPoly f;
    std::vector<Rational> x;
};

Input read_input(const RunConfig& cfg)
{
    if (trim(cfg.poly).empty())
        throw ParseError("no polynomial given (use -f or --fixture)");
    const int point_dim = cfg.at.empty() ? 0 : static_cast<int>(split(cfg.at, ',').size());
    Input in;
    in.f = parse_poly(cfg.poly, point_dim);
    in.x = parse_point(cfg.at, in.f.n_vars());
    return in;
}

std::optional<ResolutionData> read_resolution(const RunConfig& cfg)
{
    if (cfg.resolution.empty())
        return std::nullopt;
    return resolution_from_json(load_json_file(cfg.resolution));
}

int max_multiplicity(const ResolutionData& res)
{
    int n = 1;
    for (const auto& c : res.components)
        n = std::max(n, c.N);
    return n;
}

int lcm_multiplicity(const ResolutionData& res)
{
    int l = 1;
    for (const auto& c : res.components)
        l = std::lcm(l, c.N);
    return l;
}

std::vector<int> moduli_to_try(const RunConfig& cfg)
{
    if (cfg.prime_modulus > 0)
        return {cfg.prime_modulus};
    return {1, 4, 3, 12};
}

JetConfig jet_config(const RunConfig& cfg)
{
    JetConfig jc;
    jc.primes = cfg.primes;
    jc.count.node_budget = cfg.node_budget;
    jc.count.threads = cfg.threads;
    jc.count.strategy = cfg.strategy;
    return jc;
}

/// Tries each prime modulus until the counts interpolate; the last attempt
/// may fall back to the Frobenius route.
std::pair<JetResult, int> jets_with_moduli(const Input& in, int m, const RunConfig& cfg, bool allow_fallback)
{
    const auto moduli = moduli_to_try(cfg);
    JetConfig jc = jet_config(cfg);
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        jc.prime_modulus = moduli[i];
        jc.frobenius_fallback = allow_fallback && i + 1 == moduli.size();
        JetResult r = jet_class(in.f, in.x, m, jc);
        if (r.class_poly || i + 1 == moduli.size())
            return {std::move(r), moduli[i]};
    }
    throw std::logic_error("unreachable");
}

Json point_to_json(const std::vector<Rational>& x)
{
    Json out = Json::array();
    for (const auto& c : x)
        out.push_back(rational_to_json(c));
    return out;
}

Json candidates_to_json(const std::vector<DenFactor>& cands)
{
    Json out = Json::array();
    for (const auto& f : cands)
        out.push_back(Json::array({f.a, f.b}));
    return out;
}

constexpr int kExtraTerms = 4;

std::string json_text(const Json& j) { return j.dump(2); }

std::string cell_text(const Json& v)
{
    if (v.is_null())
        return "-";
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

PolySet read_polyset(const RunConfig& cfg)
{
    if (cfg.polytope.empty())
        throw ParseError("polytope needs --polytope FILE");
    return polyset_from_json(load_json_file(cfg.polytope));
}

AffineFormPW read_form(const RunConfig& cfg, int dim)
{
    if (cfg.form.empty())
        return global_form(std::vector<Integer>(static_cast<std::size_t>(dim), Integer(0)), 0, dim);
    const auto t = trim(cfg.form);
    const Json j = (!t.empty() && t.front() == '{') ? parse_json_text(t) : load_json_file(cfg.form);
    return form_from_json(j, dim);
}

SeriesPrefix constant_prefix(const std::vector<Integer>& values)
{
    SeriesPrefix p(values.size() + 1);
    for (std::size_t i = 0; i < values.size(); ++i)
        p[i + 1] = LaurentPoly(values[i]);
    return p;
}

/// Fits sum Lambda_m T^m with denominators (1 - T^N) and returns -lim.
std::optional<Integer> euler_limit(const ResolutionData& res)
{
    std::vector<DenFactor> cands;
    int sum_b = 0;
    for (const auto& c : res.components) {
        cands.push_back({0, c.N});
        sum_b += c.N;
    }
    const int len = 2 * sum_b + 6;
    auto fit = ds_fit(constant_prefix(acampo_sequence(res, len).values), cands);
    if (!fit)
        return std::nullopt;
    auto lim = ds_limit(*fit);
    if (!lim)
        return std::nullopt;
    return -lim->eval_at_one();
}

} // namespace

void RunConfig::validate() const
{
    if (m_lo < 1 || m_hi < m_lo)
        throw ParseError("m-range must be nonempty with m >= 1");
    if (terms < 0 || primes < 0 || prime_modulus < 0)
        throw ParseError("budgets must be positive");
    if (node_budget == 0)
        throw ParseError("node budget must be positive");
    if (threads < 1)
        throw ParseError("thread count must be positive");
}

std::pair<int, int> parse_m_range(const std::string& text)
{
    const auto t = trim(text);
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ParseError("bad m-range '" + text + "'");
        }
        if (used != s.size())
            throw ParseError("bad m-range '" + text + "'", used);
        return v;
    };
    const auto dots = t.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(t);
        return {v, v};
    }
    const int lo = to_int(trim(t.substr(0, dots)));
    const int hi = to_int(trim(t.substr(dots + 2)));
    if (lo < 1 || hi < lo)
        throw ParseError("m-range '" + text + "' is empty");
    return {lo, hi};
}

std::vector<Rational> parse_point(const std::string& text, int n)
{
    if (trim(text).empty())
        return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0));
    std::vector<Rational> out;
    for (const auto& part : split(text, ','))
        out.push_back(parse_rational(trim(part)));
    if (static_cast<int>(out.size()) != n)
        throw ParseError("point has " + std::to_string(out.size()) + " coordinates, polynomial has " +
                         std::to_string(n) + " variables");
    return out;
}

void apply_fixture(RunConfig& cfg, const std::string& fixture_dir, const std::string& name)
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(fixture_dir) / name;
    if (!fs::is_directory(dir))
        throw ParseError("unknown fixture '" + name + "'");
    if (cfg.resolution.empty() && fs::exists(dir / "resolution.json"))
        cfg.resolution = (dir / "resolution.json").string();
    if (fs::exists(dir / "expected.json")) {
        const Json exp = load_json_file((dir / "expected.json").string());
        if (cfg.poly.empty() && exp.contains("poly"))
            cfg.poly = exp.at("poly").get<std::string>();
        if (cfg.prime_modulus == 0 && exp.contains("prime_modulus"))
            cfg.prime_modulus = exp.at("prime_modulus").get<int>();
    }
}

Json lefschetz_report(const RunConfig& cfg)
{
    cfg.validate();
    const Input in = read_input(cfg);
    const auto res = read_resolution(cfg);
    Json rows = Json::array();
    bool any_disagree = false, any_failed = false;
    for (int m = cfg.m_lo; m <= cfg.m_hi; ++m) {
        auto [jr, modulus] = jets_with_moduli(in, m, cfg, true);
        Json row = jet_result_to_json(jr);
        row["prime_modulus"] = modulus;
        row["lambda"] = nullptr;
        row["verdict"] = nullptr;
        if (res) {
            const Integer lambda = acampo_lefschetz(*res, m);
            row["lambda"] = integer_to_json(lambda);
            if (!jr.chi_c) {
                row["verdict"] = "FAILED";
                any_failed = true;
            } else if (*jr.chi_c == lambda) {
                row["verdict"] = "AGREE";
            } else {
                row["verdict"] = "DISAGREE";
                any_disagree = true;
            }
        } else if (!jr.chi_c) {
            any_failed = true;
        }
        rows.push_back(std::move(row));
    }
    std::string status = res ? "AGREE" : "UNCHECKED";
    if (any_failed)
        status = "FAILED";
    if (any_disagree)
        status = "DISAGREE";
    return Json{{"command", "lefschetz"},
                {"poly", in.f.to_string()},
                {"at", point_to_json(in.x)},
                {"rows", rows},
                {"status", status}};
}

int cmd_lefschetz(const RunConfig& cfg, std::ostream& out)
{
    const Json report = lefschetz_report(cfg);
    if (cfg.json) {
        out << json_text(report) << '\n';
    } else {
        out << "f = " << report["poly"].get<std::string>() << "\n";
        out << std::setw(4) << "m" << std::setw(10) << "chi_c" << std::setw(15) << "route" << std::setw(10) << "Lambda"
            << "  verdict\n";
        for (const auto& row : report["rows"])
            out << std::setw(4) << row["m"].get<int>() << std::setw(10) << cell_text(row["chi_c"]) << std::setw(15)
                << row["route"].get<std::string>() << std::setw(10) << cell_text(row["lambda"]) << "  "
                << cell_text(row["verdict"]) << "\n";
        out << "status: " << report["status"].get<std::string>() << "\n";
    }
    const auto status = report["status"].get<std::string>();
    return (status == "DISAGREE" || status == "FAILED") ? kExitDisagree : kExitOk;
}

Json zeta_report(const RunConfig& cfg)
{
    cfg.validate();
    const Input in = read_input(cfg);
    const auto res = read_resolution(cfg);
    const int d = in.f.n_vars();
    const int M = cfg.terms > 0 ? cfg.terms : (res ? 2 * max_multiplicity(*res) + 2 : 8);

    // Short prefixes are extended by a few terms when the fit needs them.
    const int max_terms = M + kExtraTerms;
    SeriesPrefix prefix(1);
    std::vector<DenFactor> candidates;
    std::optional<MilnorFiber> fiber;
    std::string fit_error;
    for (int len = 1; len <= max_terms; ++len) {
        auto [jr, modulus] = jets_with_moduli(in, len, cfg, false);
        if (!jr.class_poly)
            throw InterpolationFailure("no class polynomial for m = " + std::to_string(len), std::move(jr));
        prefix.push_back(jr.class_poly->shifted(-len * d));
        if (len < M)
            continue;
        candidates = res ? resolution_candidates(*res) : infer_candidates(prefix, std::max(1, len / 2), 2 * len);
        try {
            fiber = milnor_fiber_limit(prefix, candidates);
            break;
        } catch (const FitFailure& e) {
            fit_error = e.what();
        }
    }

    Json report{{"command", "zeta"},
                {"poly", in.f.to_string()},
                {"at", point_to_json(in.x)},
                {"requested_terms", M},
                {"terms", static_cast<int>(prefix.size()) - 1},
                {"prefix", prefix_to_json(prefix)},
                {"candidates", candidates_to_json(candidates)}};
    if (!fiber) {
        report["error"] = fit_error;
        report["status"] = "FIT_FAILED";
        return report;
    }
    report["zeta"] = series_to_json(fiber->zeta);
    report["zeta_text"] = fiber->zeta.to_string();
    report["S"] = laurent_to_json(fiber->S);
    report["S_text"] = fiber->S.to_string();
    report["chi"] = integer_to_json(fiber->chi);
    report["status"] = "OK";
    if (res) {
        const int len = std::max(M, 2 * lcm_multiplicity(*res));
        try {
            const Period p = quasi_unipotent_period(acampo_sequence(*res, len));
            const bool ok = p.chi_milnor == fiber->chi;
            report["period"] = Json{{"m0", p.m0}, {"chi", integer_to_json(p.chi_milnor)}, {"verdict", ok ? "CONSISTENT" : "INCONSISTENT"}};
            if (!ok)
                report["status"] = "DISAGREE";
        } catch (const NoPeriodError& e) {
            report["period"] = Json{{"error", e.what()}};
        }
        try {
            const DaggerSeries dl = denef_loeser_zeta(*res);
            const bool ok = dl == fiber->zeta;
            report["resolution_zeta"] = Json{{"zeta", series_to_json(dl)}, {"verdict", ok ? "AGREE" : "DISAGREE"}};
            if (!ok)
                report["status"] = "DISAGREE";
        } catch (const MissingClassError&) {
        }
    }
    return report;
}

int cmd_zeta(const RunConfig& cfg, std::ostream& out)
{
    const Json r = zeta_report(cfg);
    const auto status = r["status"].get<std::string>();
    if (cfg.json) {
        out << json_text(r) << '\n';
    } else {
        out << "f = " << r["poly"].get<std::string>() << ", M = " << r["terms"].get<int>();
        if (r["terms"] != r["requested_terms"])
            out << " (extended from " << r["requested_terms"].get<int>() << " for the fit)";
        out << "\n";
        const auto& prefix = r["prefix"];
        for (std::size_t m = 1; m < prefix.size(); ++m)
            out << "  [X_" << m << "] L^-" << m * static_cast<std::size_t>(r["at"].size()) << " = "
                << laurent_from_json(prefix[m]).to_string() << "\n";
        if (status == "FIT_FAILED") {
            out << "fit failed: " << r["error"].get<std::string>() << "\n";
            out << "candidates (a, b) for 1 - L^a T^b: " << r["candidates"].dump() << "\n";
            out << "extend -M or supply --resolution\n";
            return kExitDisagree;
        }
        out << "Z = " << r["zeta_text"].get<std::string>() << "\n";
        out << "S = " << r["S_text"].get<std::string>() << "\n";
        out << "chi_c(S) = " << cell_text(r["chi"]) << "\n";
        if (r.contains("period")) {
            const auto& p = r["period"];
            if (p.contains("error"))
                out << "period: " << p["error"].get<std::string>() << "\n";
            else
                out << "period m0 = " << p["m0"].get<int>() << ", Lambda(M^m0) = " << cell_text(p["chi"]) << ": "
                    << p["verdict"].get<std::string>() << "\n";
        }
        if (r.contains("resolution_zeta"))
            out << "resolution formula: " << r["resolution_zeta"]["verdict"].get<std::string>() << "\n";
        out << "status: " << status << "\n";
    }
    return status == "OK" ? kExitOk : kExitDisagree;
}

int cmd_polytope(const RunConfig& cfg, std::ostream& out)
{
    const PolySet s = read_polyset(cfg);
    Json r{{"command", "polytope"}, {"action", cfg.action}};
    int code = kExitOk;
    if (cfg.action == "chi") {
        try {
            r["chi"] = chi(s);
        } catch (const UnboundedError&) {
            r["chi"] = nullptr;
        }
        try {
            r["chi_bounded"] = chi_bounded(s);
        } catch (const UnboundedError&) {
            r["chi_bounded"] = nullptr;
        }
        if (!cfg.json)
            out << "chi = " << cell_text(r["chi"]) << "\nchi' = " << cell_text(r["chi_bounded"]) << "\n";
    } else if (cfg.action == "alpha") {
        cfg.validate();
        Json rows = Json::array();
        for (int m = cfg.m_lo; m <= cfg.m_hi; ++m) {
            Json row{{"m", m}};
            if (is_bounded(s))
                row["alpha"] = alpha_m(s, m).to_string("T");
            try {
                row["tilde_alpha"] = tilde_alpha(s, m).to_string();
            } catch (const UnsupportedShapeError&) {
            } catch (const UnboundedError&) {
            }
            rows.push_back(std::move(row));
            if (!cfg.json) {
                out << "m = " << m;
                if (rows.back().contains("alpha"))
                    out << "  alpha = " << rows.back()["alpha"].get<std::string>();
                if (rows.back().contains("tilde_alpha"))
                    out << "  tilde_alpha = " << rows.back()["tilde_alpha"].get<std::string>();
                out << "\n";
            }
        }
        r["rows"] = rows;
    } else if (cfg.action == "series") {
        const AffineFormPW form = read_form(cfg, s.dim);
        try {
            const PolytopeZeta z = zeta_polytope(s, form, cfg.terms);
            r["series"] = series_to_json(z.series);
            r["limit"] = laurent_to_json(z.limit);
            r["chi"] = z.chi;
            r["terms"] = z.terms;
            r["verdict"] = "OK";
            if (!cfg.json)
                out << "Z = " << z.series.to_string() << "\nlimit = " << z.limit.to_string() << "\n-chi = " << -z.chi
                    << "\nverdict: OK\n";
        } catch (const LimitMismatch& e) {
            r["verdict"] = "MISMATCH";
            r["error"] = e.what();
            code = kExitDisagree;
            if (!cfg.json)
                out << "verdict: MISMATCH (" << e.what() << ")\n";
        }
    } else {
        throw ParseError("polytope action must be chi, alpha or series");
    }
    if (cfg.json)
        out << json_text(r) << '\n';
    return code;
}

int cmd_acampo(const RunConfig& cfg, std::ostream& out)
{
    const auto res = read_resolution(cfg);
    if (!res)
        throw ParseError("acampo needs --resolution or --fixture");
    const int M = cfg.terms > 0 ? cfg.terms : std::max(2 * max_multiplicity(*res) + 2, 2 * lcm_multiplicity(*res));
    const LefschetzSequence seq = acampo_sequence(*res, M);
    Json values = Json::array();
    for (const auto& v : seq.values)
        values.push_back(integer_to_json(v));
    Json r{{"command", "acampo"}, {"terms", M}, {"lambda", values}};
    int code = kExitOk;
    try {
        const Period p = quasi_unipotent_period(seq);
        r["period"] = Json{{"m0", p.m0}, {"chi", integer_to_json(p.chi_milnor)}};
    } catch (const NoPeriodError& e) {
        r["period"] = Json{{"error", e.what()}};
    }
    const auto euler = euler_limit(*res);
    r["euler_zeta_limit"] = euler ? integer_to_json(*euler) : Json();
    if (euler && r["period"].contains("chi") && integer_from_json(r["period"]["chi"]) != *euler)
        code = kExitDisagree;
    try {
        const DaggerSeries z = denef_loeser_zeta(*res);
        r["zeta"] = series_to_json(z);
        if (auto lim = ds_limit(z)) {
            const LaurentPoly S = -*lim;
            r["S"] = laurent_to_json(S);
            r["S_chi"] = integer_to_json(S.eval_at_one());
        }
        if (!cfg.json)
            out << "Z = " << z.to_string() << "\n";
    } catch (const MissingClassError&) {
    }
    if (cfg.json) {
        out << json_text(r) << '\n';
    } else {
        out << "Lambda(M^m), m = 1.." << M << ": " << values.dump() << "\n";
        if (r["period"].contains("m0"))
            out << "period m0 = " << r["period"]["m0"].get<int>() << ", chi(F) = " << cell_text(r["period"]["chi"])
                << "\n";
        else
            out << "period: " << r["period"]["error"].get<std::string>() << "\n";
        out << "-lim sum Lambda_m T^m = " << cell_text(r["euler_zeta_limit"]) << "\n";
        if (r.contains("S"))
            out << "S = " << laurent_from_json(r["S"]).to_string() << ", chi_c(S) = " << cell_text(r["S_chi"]) << "\n";
    }
    return code;
}

int cmd_count(const RunConfig& cfg, std::ostream& out)
{
    cfg.validate();
    const Input in = read_input(cfg);
    JetConfig jc = jet_config(cfg);
    jc.prime_modulus = moduli_to_try(cfg).front();
    jc.frobenius_fallback = false;
    Json rows = Json::array();
    for (int m = cfg.m_lo; m <= cfg.m_hi; ++m) {
        JetResult jr = jet_class(in.f, in.x, m, jc);
        rows.push_back(jet_result_to_json(jr));
        if (!cfg.json) {
            out << "m = " << m << "\n";
            for (const auto& [q, n] : jr.table.rows)
                out << "  q = " << q.get_str() << "  #X = " << n.get_str() << "\n";
            out << "  class: " << (jr.class_poly ? jr.class_poly->to_string() : std::string("-")) << "\n";
        }
    }
    if (cfg.json)
        out << json_text(Json{{"command", "count"}, {"poly", in.f.to_string()}, {"at", point_to_json(in.x)}, {"rows", rows}})
            << '\n';
    return kExitOk;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.command == "lefschetz")
            return cmd_lefschetz(cfg, out);
        if (cfg.command == "zeta")
            return cmd_zeta(cfg, out);
        if (cfg.command == "polytope")
            return cmd_polytope(cfg, out);
        if (cfg.command == "acampo")
            return cmd_acampo(cfg, out);
        if (cfg.command == "count")
            return cmd_count(cfg, out);
        throw ParseError("unknown command '" + cfg.command + "'");
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const InterpolationFailure& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& [q, n] : e.result().table.rows)
            err << "  q = " << q.get_str() << "  #X = " << n.get_str() << "\n";
        return kExitDisagree;
    } catch (const FitFailure& e) {
        err << "error: " << e.what() << "\n";
        return kExitDisagree;
    } catch (const LimitMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kExitDisagree;
    } catch (const NoPeriodError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDisagree;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace motzeta

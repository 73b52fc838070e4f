#include "motzeta/json_io.hpp"

#include "motzeta/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace motzeta {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw ParseError("malformed JSON: " + what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

int small_int(const Json& j, const char* what)
{
    if (!j.is_number_integer())
        malformed(std::string(what) + " must be an integer");
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        malformed(std::string(what) + " out of range");
    return static_cast<int>(v);
}

std::vector<HalfRow> rows_from_json(const Json& j, int dim)
{
    std::vector<HalfRow> out;
    if (!j.is_array())
        malformed("constraint list must be an array");
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim + 1)
            malformed("constraint rows need dim + 1 entries");
        HalfRow r;
        for (int i = 0; i < dim; ++i)
            r.c.push_back(rational_from_json(row[static_cast<std::size_t>(i)]));
        r.d = rational_from_json(row[static_cast<std::size_t>(dim)]);
        out.push_back(std::move(r));
    }
    return out;
}

Json rows_to_json(const std::vector<HalfRow>& rows)
{
    Json out = Json::array();
    for (const auto& r : rows) {
        Json row = Json::array();
        for (const auto& c : r.c)
            row.push_back(rational_to_json(c));
        row.push_back(rational_to_json(r.d));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

Json integer_to_json(const Integer& z)
{
    if (z.fits_slong_p())
        return Json(static_cast<std::int64_t>(z.get_si()));
    return Json(z.get_str());
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0)
            malformed("bad integer string '" + j.get<std::string>() + "'");
        return z;
    }
    malformed("expected an integer");
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(Integer(static_cast<long>(j.get<std::int64_t>())));
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    malformed("expected an integer or a \"p/q\" string");
}

Json rational_to_json(const Rational& r)
{
    if (r.get_den() == 1)
        return integer_to_json(r.get_num());
    return Json(to_string(r));
}

Json laurent_to_json(const LaurentPoly& p)
{
    Json out = Json::array();
    for (const auto& [e, c] : p.terms())
        out.push_back(Json::array({e, integer_to_json(c)}));
    return out;
}

LaurentPoly laurent_from_json(const Json& j)
{
    if (j.is_number_integer() || j.is_string())
        return LaurentPoly(integer_from_json(j));
    if (!j.is_array())
        malformed("Laurent polynomial must be a list of [exponent, coefficient] pairs");
    std::vector<LaurentPoly::Term> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2)
            malformed("Laurent term must be [exponent, coefficient]");
        terms.emplace_back(small_int(t[0], "exponent"), integer_from_json(t[1]));
    }
    return LaurentPoly::from_terms(terms);
}

Json series_to_json(const DaggerSeries& h)
{
    Json num = Json::array();
    for (const auto& [e, c] : h.numerator())
        num.push_back(Json::array({e, laurent_to_json(c)}));
    Json den = Json::array();
    for (const auto& f : h.denominator())
        den.push_back(Json::array({f.a, f.b}));
    return Json{{"num", num}, {"den", den}};
}

DaggerSeries series_from_json(const Json& j)
{
    TPoly num;
    for (const auto& t : field(j, "num")) {
        if (!t.is_array() || t.size() != 2)
            malformed("numerator term must be [t_exp, laurent]");
        LaurentPoly c = laurent_from_json(t[1]);
        if (!c.is_zero())
            num[small_int(t[0], "t exponent")] += c;
    }
    std::vector<DenFactor> den;
    for (const auto& f : field(j, "den")) {
        if (!f.is_array() || f.size() != 2)
            malformed("denominator factor must be [a, b]");
        den.push_back({small_int(f[0], "a"), small_int(f[1], "b")});
        if (den.back().b < 1)
            malformed("denominator factor needs b >= 1");
    }
    return DaggerSeries(std::move(num), std::move(den));
}

Json prefix_to_json(const SeriesPrefix& p)
{
    Json out = Json::array();
    for (const auto& c : p)
        out.push_back(laurent_to_json(c));
    return out;
}

RationalCell cell_from_json(const Json& j, int dim)
{
    if (!j.is_object())
        malformed("cell must be an object");
    RationalCell cell;
    cell.dim = dim;
    if (j.contains("eq"))
        cell.eq = rows_from_json(j.at("eq"), dim);
    if (j.contains("lt"))
        cell.lt = rows_from_json(j.at("lt"), dim);
    if (j.contains("le"))
        cell.le = rows_from_json(j.at("le"), dim);
    return cell;
}

Json cell_to_json(const RationalCell& c)
{
    return Json{{"eq", rows_to_json(c.eq)}, {"lt", rows_to_json(c.lt)}, {"le", rows_to_json(c.le)}};
}

PolySet polyset_from_json(const Json& j)
{
    PolySet s;
    s.dim = small_int(field(j, "dim"), "dim");
    if (s.dim < 0)
        malformed("dim must be nonnegative");
    for (const auto& c : field(j, "cells"))
        s.cells.push_back(cell_from_json(c, s.dim));
    return s;
}

Json polyset_to_json(const PolySet& s)
{
    Json cells = Json::array();
    for (const auto& c : s.cells)
        cells.push_back(cell_to_json(c));
    return Json{{"dim", s.dim}, {"cells", cells}};
}

AffineFormPW form_from_json(const Json& j, int dim)
{
    auto piece_from = [dim](const Json& p) {
        AffinePiece piece;
        piece.guard = p.contains("guard") ? cell_from_json(p.at("guard"), dim) : RationalCell{dim, {}, {}, {}};
        for (const auto& a : field(p, "a"))
            piece.a.push_back(integer_from_json(a));
        if (static_cast<int>(piece.a.size()) != dim)
            malformed("affine form needs one coefficient per coordinate");
        piece.b = p.contains("b") ? integer_from_json(p.at("b")) : Integer(0);
        return piece;
    };
    AffineFormPW form;
    if (j.is_object() && j.contains("pieces")) {
        for (const auto& p : j.at("pieces"))
            form.pieces.push_back(piece_from(p));
    } else {
        form.pieces.push_back(piece_from(j));
    }
    if (form.pieces.empty())
        malformed("affine form without pieces");
    return form;
}

ResolutionData resolution_from_json(const Json& j)
{
    ResolutionData r;
    r.d = small_int(field(j, "d"), "d");
    for (const auto& c : field(j, "components")) {
        ResolutionData::Component comp;
        if (!field(c, "id").is_string())
            malformed("component id must be a string");
        comp.id = c.at("id").get<std::string>();
        comp.N = small_int(field(c, "N"), "N");
        comp.nu = small_int(field(c, "nu"), "nu");
        r.components.push_back(std::move(comp));
    }
    for (const auto& s : field(j, "strata")) {
        ResolutionData::Stratum st;
        for (const auto& id : field(s, "ids")) {
            if (!id.is_string())
                malformed("stratum ids must be strings");
            st.ids.push_back(id.get<std::string>());
        }
        st.chi = integer_from_json(field(s, "chi"));
        if (s.contains("class_L") && !s.at("class_L").is_null())
            st.class_L = laurent_from_json(s.at("class_L"));
        r.strata.push_back(std::move(st));
    }
    try {
        r.validate();
    } catch (const MalformedData& e) {
        throw ParseError(e.what());
    }
    return r;
}

Json resolution_to_json(const ResolutionData& r)
{
    Json comps = Json::array();
    for (const auto& c : r.components)
        comps.push_back(Json{{"id", c.id}, {"N", c.N}, {"nu", c.nu}});
    Json strata = Json::array();
    for (const auto& s : r.strata) {
        Json st{{"ids", s.ids}, {"chi", integer_to_json(s.chi)}};
        if (s.class_L)
            st["class_L"] = laurent_to_json(*s.class_L);
        strata.push_back(std::move(st));
    }
    return Json{{"d", r.d}, {"components", comps}, {"strata", strata}};
}

Json jet_result_to_json(const JetResult& r)
{
    Json counts = Json::array();
    for (const auto& [q, n] : r.table.rows)
        counts.push_back(Json::array({integer_to_json(q), integer_to_json(n)}));
    Json out{{"m", r.m},
             {"counts", counts},
             {"class", r.class_poly ? laurent_to_json(*r.class_poly) : Json()},
             {"chi_c", r.chi_c ? integer_to_json(*r.chi_c) : Json()},
             {"route", r.route}};
    if (!r.frobenius.empty()) {
        Json runs = Json::array();
        for (const auto& f : r.frobenius) {
            Json c = Json::array();
            for (const auto& n : f.counts)
                c.push_back(integer_to_json(n));
            runs.push_back(Json{{"p", f.p},
                                {"counts", c},
                                {"recurrence_length", f.recurrence_length},
                                {"extrapolated", integer_to_json(f.extrapolated)}});
        }
        out["frobenius"] = runs;
    }
    return out;
}

Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

} // namespace motzeta

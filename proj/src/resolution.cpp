#include "motzeta/resolution.hpp"

#include "motzeta/errors.hpp"

#include <set>

namespace motzeta {

const ResolutionData::Component& ResolutionData::component(const std::string& id) const
{
    for (const auto& c : components)
        if (c.id == id)
            return c;
    throw MalformedData("unknown component id '" + id + "'");
}

void ResolutionData::validate() const
{
    std::set<std::string> seen;
    for (const auto& c : components) {
        if (!seen.insert(c.id).second)
            throw MalformedData("duplicate component id '" + c.id + "'");
        if (c.N < 1 || c.nu < 1)
            throw MalformedData("component '" + c.id + "' needs positive N and nu");
    }
    for (const auto& s : strata) {
        if (s.ids.empty())
            throw MalformedData("stratum with an empty id list");
        std::set<std::string> local;
        for (const auto& id : s.ids) {
            if (!seen.count(id))
                throw MalformedData("stratum references unknown component '" + id + "'");
            if (!local.insert(id).second)
                throw MalformedData("stratum lists component '" + id + "' twice");
        }
    }
}

Integer acampo_lefschetz(const ResolutionData& res, int m)
{
    if (m < 1)
        throw std::invalid_argument("m must be positive");
    res.validate();
    Integer total = 0;
    for (const auto& s : res.strata) {
        if (s.ids.size() != 1)
            continue;
        const auto& c = res.component(s.ids.front());
        if (m % c.N == 0)
            total += Integer(c.N) * s.chi;
    }
    return total;
}

DaggerSeries denef_loeser_zeta(const ResolutionData& res)
{
    res.validate();
    const LaurentPoly l_minus_one = LaurentPoly::from_terms({{1, 1}, {0, -1}});
    DaggerSeries total;
    for (const auto& s : res.strata) {
        if (!s.class_L)
            throw MissingClassError("stratum {" + s.ids.front() + (s.ids.size() > 1 ? ",..." : "") +
                                    "} has no class_L");
        LaurentPoly coeff = *s.class_L * l_minus_one.pow(static_cast<unsigned>(s.ids.size() - 1));
        int t_exp = 0;
        std::vector<DenFactor> den;
        for (const auto& id : s.ids) {
            const auto& c = res.component(id);
            coeff = coeff.shifted(-c.nu);
            t_exp += c.N;
            den.push_back({-c.nu, c.N});
        }
        total = total + DaggerSeries(TPoly{{t_exp, coeff}}, std::move(den));
    }
    return total.normalized();
}

LefschetzSequence acampo_sequence(const ResolutionData& res, int M)
{
    LefschetzSequence seq;
    seq.source = "resolution";
    for (int m = 1; m <= M; ++m)
        seq.values.push_back(acampo_lefschetz(res, m));
    return seq;
}

Period quasi_unipotent_period(const LefschetzSequence& seq)
{
    const int M = static_cast<int>(seq.values.size());
    for (int m0 = 1; 2 * m0 <= M; ++m0) {
        TPoly num;
        for (int i = 1; i <= m0; ++i)
            if (seq.values[static_cast<std::size_t>(i - 1)] != 0)
                num.emplace(i, LaurentPoly(seq.values[static_cast<std::size_t>(i - 1)]));
        const DaggerSeries candidate(std::move(num), {{0, m0}});
        const SeriesPrefix expansion = ds_expand(candidate, M);
        bool match = true;
        for (int m = 1; m <= M && match; ++m)
            match = expansion[static_cast<std::size_t>(m)] == LaurentPoly(seq.values[static_cast<std::size_t>(m - 1)]);
        if (match)
            return {m0, seq.values[static_cast<std::size_t>(m0 - 1)]};
    }
    throw NoPeriodError("no period m0 <= " + std::to_string(M / 2) + " reproduces the sequence; extend the range");
}

std::vector<DenFactor> resolution_candidates(const ResolutionData& res)
{
    std::vector<DenFactor> out;
    for (const auto& c : res.components)
        out.push_back({-c.nu, c.N});
    return out;
}

} // namespace motzeta

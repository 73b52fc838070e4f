#pragma once

#include "motzeta/dagger_series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace motzeta {

/// Numerical data of an embedded resolution over the base point.
struct ResolutionData {
    struct Component {
        std::string id;
        int N = 1;  // multiplicity of f along the divisor
        int nu = 1; // 1 + discrepancy
    };
    struct Stratum {
        std::vector<std::string> ids;
        Integer chi;                       // Euler characteristic of the open stratum
        std::optional<LaurentPoly> class_L; // class of the open stratum, when known
    };

    int d = 0;
    std::vector<Component> components;
    std::vector<Stratum> strata;

    const Component& component(const std::string& id) const;
    /// Throws MalformedData on duplicate ids, dangling references or
    /// nonpositive multiplicities.
    void validate() const;
};

/// sum over singleton strata {i} with N_i | m of N_i * chi(E_i).
Integer acampo_lefschetz(const ResolutionData& res, int m);

/// sum_I (L-1)^{|I|-1} [E_I] prod_{i in I} L^{-nu_i} T^{N_i} / (1 - L^{-nu_i} T^{N_i}).
/// Throws MissingClassError when a stratum has no class.
DaggerSeries denef_loeser_zeta(const ResolutionData& res);

/// Values of m -> Lambda(M^m) for m = 1..M.
struct LefschetzSequence {
    std::vector<Integer> values;
    std::string source;
};

struct Period {
    int m0 = 1;
    Integer chi_milnor;
};

/// Smallest m0 <= M/2 such that sum_{i<=m0} Lambda_i T^i / (1 - T^m0)
/// reproduces the sequence. Throws NoPeriodError.
Period quasi_unipotent_period(const LefschetzSequence& seq);

/// Lambda(M^m) for m = 1..M from the resolution data.
LefschetzSequence acampo_sequence(const ResolutionData& res, int M);

/// Denominator factors (1 - L^{-nu} T^N) of the components, one per component.
std::vector<DenFactor> resolution_candidates(const ResolutionData& res);

} // namespace motzeta

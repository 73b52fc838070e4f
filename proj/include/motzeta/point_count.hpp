#pragma once

#include "motzeta/finite_field.hpp"
#include "motzeta/jet_system.hpp"

#include <cstdint>

namespace motzeta {

enum class CountStrategy {
    /// Plain depth-first search in level-major order with early pruning.
    LevelDfs,
    /// Adds forced-value propagation and a linear-algebra finish once the
    /// remaining system is affine-linear.
    Propagate,
};

struct CountOptions {
    CountStrategy strategy = CountStrategy::Propagate;
    std::uint64_t node_budget = 1'000'000'000;
    int threads = 1;
};

/// Number of solutions in F_q^{nm}, q = p^r. Throws ResourceLimit when the
/// node budget is exhausted.
Integer count_points(const JetConstraintSystem& sys, const FiniteField& field, const CountOptions& options = {});
Integer count_points(const JetConstraintSystem& sys, std::uint32_t p, const CountOptions& options = {});

/// Jet variables that occur in no constraint.
int absent_variable_count(const JetConstraintSystem& sys);

} // namespace motzeta

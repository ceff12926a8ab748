#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "evospread/graph.hpp"
#include "evospread/policy.hpp"

namespace evospread {

inline constexpr std::size_t kOracleLimit = 14;

/// Expected remaining time and cost from every configuration, indexed by
/// the n-bit mask of the configuration (bit i is node i).
struct ExactSolution {
    std::size_t n = 0;
    std::vector<double> expected_time;
    std::vector<double> expected_cost;
    double residual = 0.0;  ///< max-norm residual of the row-normalised systems

    double time_at(std::uint64_t mask) const { return expected_time.at(mask); }
    double cost_at(std::uint64_t mask) const { return expected_cost.at(mask); }
    double time_from_zero() const { return expected_time.front(); }
    double cost_from_zero() const { return expected_cost.front(); }
};

/// Solves the first-step equations of the full chain. Constant, feedback
/// and single-segment open-loop policies are accepted.
ExactSolution solve_exact(const Graph& g, double beta, const ControlPolicy& policy,
                          std::size_t limit = kOracleLimit);

/// Survival probability of the birth-death chain by a direct tridiagonal
/// solve of the ruin equations.
double solve_birth_death(double beta, std::size_t n, std::size_t a);

}  // namespace evospread

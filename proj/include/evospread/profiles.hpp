#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evospread/graph.hpp"

namespace evospread {

enum class ProfileMode { Exact, ClosedForm, AnalyticBound };

/// Minimum conductance and maximum expansiveness profiles over subset
/// sizes a = 1..n-1. Entry a is stored at index a - 1.
struct Profiles {
    std::vector<double> phi;
    std::vector<double> eta;
    ProfileMode mode = ProfileMode::Exact;

    std::size_t node_count() const noexcept { return phi.size() + 1; }
    double phi_at(std::size_t a) const { return phi.at(a - 1); }
    double eta_at(std::size_t a) const { return eta.at(a - 1); }
};

inline constexpr std::size_t kDefaultExhaustiveLimit = 22;

/// Exact mode enumerates every nonempty proper subset (n <= limit);
/// closed-form mode is available for complete and ring graphs only.
Profiles profiles(const Graph& g, ProfileMode mode,
                  std::size_t exhaustive_limit = kDefaultExhaustiveLimit);

/// High-probability lower bound on phi for the two-block SBM, indexed
/// like Profiles::phi. A lower bound, never exact.
std::vector<double> sbm_phi_bound(std::size_t n, double c, double p, double alpha, std::size_t L);

/// Elementwise max{phi(a), K}.
std::vector<double> floor_profile(std::span<const double> phi, double K);

}  // namespace evospread

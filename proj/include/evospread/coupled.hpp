#pragma once

#include <cstdint>
#include <vector>

#include "evospread/graph.hpp"
#include "evospread/policy.hpp"
#include "evospread/rng.hpp"
#include "evospread/simulate.hpp"

namespace evospread {

struct CoupledResult {
    SimResult x;
    SimResult y;
    bool dominated = true;  ///< Y >= X held after every event
};

/// X follows (G, beta, U) from x0 and Y follows (G, gamma, U) from y0 on
/// shared link clocks, shared conflict draws and shared control clocks.
/// Needs beta <= gamma and x0 <= y0. Feedback policies are rejected.
CoupledResult simulate_coupled_ordered(const Graph& g, double beta, double gamma, const ControlPolicy& policy,
                                       const std::vector<std::uint8_t>& x0, const std::vector<std::uint8_t>& y0,
                                       Engine& engine, std::uint64_t max_events = 100'000'000);

/// beta = 1 for both. X follows (G, 1, U) from x0; Y follows (G, 1, 0)
/// from the indicator of seed_set. Control clocks only touch X.
CoupledResult simulate_coupled_seeded(const Graph& g, const ControlPolicy& policy,
                                      const std::vector<std::uint8_t>& x0, const std::vector<NodeId>& seed_set,
                                      Engine& engine, std::uint64_t max_events = 100'000'000);

}  // namespace evospread

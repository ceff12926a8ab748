#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "evospread/configuration.hpp"
#include "evospread/graph.hpp"
#include "evospread/policy.hpp"
#include "evospread/rng.hpp"

namespace evospread {

enum class JumpCause { SpreadUp, SpreadDown, Control };

std::string_view to_string(JumpCause cause);

/// One jump h of a trajectory. boundary_before is B_{h-1}; control_accum
/// is c_h, the integral of C over the holding interval that ended here.
struct JumpRecord {
    double time = 0.0;
    double boundary_before = 0.0;
    double control_accum = 0.0;
    std::size_t ones_after = 0;
    double boundary_after = 0.0;
    JumpCause cause = JumpCause::SpreadUp;
    NodeId node = 0;
};

/// Passed to the observer just before a flip is applied.
struct EventInfo {
    double time = 0.0;
    NodeId node = 0;
    JumpCause cause = JumpCause::SpreadUp;
    const Configuration* before = nullptr;
    double B = 0.0;
    double C = 0.0;
    double total_u = 0.0;     ///< 1^T U in the holding interval
    double total_rate = 0.0;  ///< rate the waiting time was drawn with
};

struct SimOptions {
    bool record_jumps = false;
    std::uint64_t max_events = 100'000'000;
    std::function<void(const EventInfo&)> observer;
};

struct SimResult {
    double T = 0.0;
    double J = 0.0;
    std::uint64_t Nc = 0;
    std::uint64_t events = 0;
    bool complete = false;
    std::vector<JumpRecord> jumps;
    Configuration final;
};

/// Exact event-driven trajectory from x0 until the all-1 configuration.
/// Returns complete = false when max_events is reached first.
SimResult simulate(const Graph& g, double beta, const ControlPolicy& policy,
                   const std::vector<std::uint8_t>& x0, Engine& engine, const SimOptions& options = {});

/// Writes `h t_h a_h b_h cause` lines; needs a run with record_jumps.
void write_trajectory(std::ostream& out, const SimResult& result);

}  // namespace evospread

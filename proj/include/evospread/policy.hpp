#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evospread/configuration.hpp"
#include "evospread/graph.hpp"

namespace evospread {

/// U(t) = u for all t.
struct ConstantPolicy {
    std::vector<double> u;
};

/// Piecewise-constant open-loop schedule. rates[0] applies on
/// [0, breakpoints[0]), rates[s] on [breakpoints[s-1], breakpoints[s]),
/// and the last segment extends to infinity.
struct OpenLoopPolicy {
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> rates;
};

/// Which 0-node receives the feedback control.
enum class TargetRule {
    MaxContact,   ///< largest weight towards 1-nodes, lowest index on ties (default)
    LowestIndex,  ///< lowest-index 0-node
    RandomZero,   ///< uniformly random 0-node
};

/// How the feedback rate depends on the aggregates (A, B).
enum class FeedbackLaw {
    /// mu(a, b) = K - b when a < n and b < K, otherwise 0.
    BoundaryCompensating,
    /// mu(a, b) = K whenever a < n; the targeted constant-rate comparison.
    FixedRate,
};

struct FeedbackPolicy {
    double K = 0.0;
    TargetRule target = TargetRule::MaxContact;
    FeedbackLaw law = FeedbackLaw::BoundaryCompensating;
};

using ControlPolicy = std::variant<ConstantPolicy, OpenLoopPolicy, FeedbackPolicy>;

std::string_view to_string(TargetRule rule);
TargetRule parse_target_rule(std::string_view text);

/// Checks the structural invariants for a graph of n nodes. When
/// start_all_zero is set, the rate applied in the all-0 configuration must
/// be positive.
void validate_policy(const ControlPolicy& policy, std::size_t n, bool start_all_zero);

/// Nodes that can ever receive a positive control rate.
std::vector<NodeId> policy_support(const ControlPolicy& policy, std::size_t n);

bool is_time_homogeneous(const ControlPolicy& policy);

/// Feedback rate mu(a, b) for a graph of n nodes.
double feedback_rate(const FeedbackPolicy& policy, std::size_t a, double b, std::size_t n);

/// Node chosen by a deterministic target rule; RandomZero has no single
/// target and returns nullopt. Throws NoZeroNode at the all-1 state.
std::optional<NodeId> feedback_target(const FeedbackPolicy& policy, const Configuration& conf);

struct ControlRates {
    std::vector<double> u;   ///< per-node rates U(t)
    double effective = 0.0;  ///< C = (1 - x)^T U
    double total = 0.0;      ///< 1^T U
};

/// Control rates in the given configuration at time t. For RandomZero
/// feedback the rate is spread evenly over the 0-nodes, which gives the
/// same law as drawing the target uniformly at each activation.
ControlRates control_rates(const ControlPolicy& policy, const Configuration& conf, double t);

struct NodeRates {
    std::vector<double> lambda_plus;
    std::vector<double> lambda_minus;
};

/// Per-node transition rates for the given control vector.
NodeRates node_rates(const Graph& g, double beta, const Configuration& conf, std::span<const double> U);

/// Parses `rate@node[,rate@node...]` into a dense vector of length n.
std::vector<double> parse_sparse_rates(std::string_view text, std::size_t n);

/// Reads an open-loop schedule: one `start_time rate@node[,...]` line per
/// segment, the first starting at time 0.
OpenLoopPolicy parse_schedule(std::string_view text, std::size_t n);

}  // namespace evospread

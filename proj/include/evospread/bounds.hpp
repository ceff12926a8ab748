#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evospread/graph.hpp"
#include "json.hpp"

namespace evospread {

enum class BoundKind { Upper, Lower, Identity };

const char* to_string(BoundKind kind);

struct BoundReport {
    std::string name;
    BoundKind kind = BoundKind::Upper;
    double value = 0.0;
    std::vector<std::string> hypotheses;
    std::vector<std::pair<std::string, double>> inputs;
    bool degenerate = false;  ///< infinite, or clamped to a trivial value
};

/// {name, kind, value, hypotheses, inputs, degenerate}; infinities are
/// written as the string "inf".
nlohmann::json to_json(const BoundReport& report);

/// f holds f(0), ..., f(n-1). Entries may be +inf (no contribution);
/// a zero entry makes the bound infinite.
BoundReport theorem1_upper(std::span<const double> f, double beta);

/// phi is indexed as Profiles::phi (entry a at a - 1).
BoundReport corollary1_upper(std::span<const double> phi, double beta, double total_u);

BoundReport corollary3_lower(std::span<const double> eta, std::size_t support_size);
BoundReport corollary4_lower(std::span<const double> eta, std::size_t support_size, double total_u);

/// Minimum boundary over proper supersets of the support, by enumeration.
BoundReport corollary5_lower(const Graph& g, std::span<const NodeId> support,
                             std::size_t exhaustive_limit = 22);
/// 1 / zeta(R) for a caller-chosen R containing the support.
BoundReport corollary5_lower_given(const Graph& g, std::span<const NodeId> support, std::span<const NodeId> R);

BoundReport log_lower(double alpha, std::size_t n, std::size_t support_size);
BoundReport expander_upper(double beta, double total_u, double gamma, std::size_t n);

struct SbmBoundPair {
    BoundReport lower;
    BoundReport upper;
};
SbmBoundPair sbm_bounds(double beta, double total_u, std::size_t n, double c, double p, std::size_t L,
                        double alpha);

BoundReport ring_lower(std::size_t n, double expected_cost);

struct FeedbackBoundPair {
    BoundReport time_upper;
    BoundReport cost_upper;
};
FeedbackBoundPair feedback_bounds(std::span<const double> phi, double K, double beta);
FeedbackBoundPair sbm_feedback_upper(double beta, double K, double c, double p, double alpha, std::size_t n);

double moran_lower(double beta);

/// Probability that the birth-death chain started at a reaches n before
/// dropping below a.
double birth_death_survival(double beta, std::size_t n, std::size_t a);

}  // namespace evospread

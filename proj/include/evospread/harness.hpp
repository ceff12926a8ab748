#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "evospread/graph.hpp"
#include "evospread/policy.hpp"
#include "evospread/simulate.hpp"
#include "json.hpp"

namespace evospread {

/// kind: complete | ring | sbm | er | path | path2 | star | file.
struct GraphSpec {
    std::string kind = "complete";
    std::size_t n = 0;
    double alpha = 1.0;
    double p = 0.1;
    double c = 0.4;
    std::size_t L = 5;
    bool fixed_graph = false;  ///< one realization shared by all replications
    std::string path;          ///< for kind == file
    /// sbm weight divisor: "realized" (max degree of the sample) or "np".
    std::string degree_scale = "realized";
};

/// kind: constant | openloop | feedback | fixed-rate (targeted, rate K).
struct PolicySpec {
    std::string kind = "constant";
    std::string u = "1@0";
    std::string schedule;  ///< schedule text for openloop
    double K = 0.25;
    TargetRule target = TargetRule::MaxContact;
};

struct ExperimentConfig {
    GraphSpec graph;
    double beta = 0.8;
    PolicySpec policy;
    std::string x0;  ///< empty: all-0; a 0/1 string of length n; or a comma list of 1-nodes
    std::size_t replications = 200;
    std::uint64_t master_seed = 0;
    bool record_jumps = false;
    std::size_t threads = 0;  ///< 0: available parallelism
    std::uint64_t max_events = 100'000'000;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

bool is_random_kind(const std::string& kind);
Graph build_graph(const GraphSpec& spec, Engine& engine);
ControlPolicy build_policy(const PolicySpec& spec, std::size_t n);
std::vector<std::uint8_t> build_x0(const std::string& text, std::size_t n);

inline constexpr double kZ90 = 1.6449;

struct Estimate {
    double mean = 0.0;
    double se = 0.0;  ///< standard error: sample std / sqrt(count)
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double half_width() const { return kZ90 * se; }
};

Estimate estimate(std::span<const double> samples);

struct Replication {
    double T = 0.0;
    double J = 0.0;
    std::uint64_t Nc = 0;
    std::uint64_t events = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    double axis = std::numeric_limits<double>::quiet_NaN();
    std::vector<Replication> reps;
    std::vector<SimResult> runs;  ///< kept only with record_jumps
    Estimate T, J, Nc;
};

/// Runs all replications; replication i draws from stream (seed, i).
/// Output is independent of the thread count.
ExperimentResult run(const ExperimentConfig& config);

enum class SweepAxis { N, K, Beta };
const char* to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& text);

struct SweepTable {
    std::string axis_name;
    std::vector<ExperimentResult> rows;
};

SweepTable sweep(const ExperimentConfig& config, SweepAxis axis, std::span<const double> values);

/// (mean_J, mean_T) pairs, one per row.
std::vector<std::pair<double, double>> tradeoff(const SweepTable& table);

}  // namespace evospread

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evospread/graph.hpp"

namespace evospread {

/// Binary node states together with the aggregates the dynamics reads:
/// the 1-count A, the boundary B of the 1-set, and per-node weights towards
/// 1-neighbours, (W x)_i, and 0-neighbours, (W (1 - x))_i.
///
/// flip() updates everything in O(deg). Per-node neighbour counts snap the
/// weights to exact zero when a node loses its last 1- (or 0-) neighbour,
/// so a rate that must vanish never survives as rounding residue.
class Configuration {
public:
    Configuration() = default;
    Configuration(const Graph& g, std::vector<std::uint8_t> bits);

    static Configuration zeros(const Graph& g);
    static Configuration ones_on(const Graph& g, std::span<const NodeId> nodes);
    static Configuration from_mask(const Graph& g, std::uint64_t mask);

    void flip(const Graph& g, NodeId i);

    std::size_t size() const noexcept { return x_.size(); }
    bool state(NodeId i) const { return x_[i] != 0; }
    const std::vector<std::uint8_t>& bits() const noexcept { return x_; }
    std::size_t ones() const noexcept { return ones_; }
    bool all_ones() const noexcept { return ones_ == x_.size(); }
    bool all_zeros() const noexcept { return ones_ == 0; }
    double boundary() const noexcept { return b_; }

    /// (W x)_i and (W (1 - x))_i regardless of the state of i.
    double weight_to_ones(NodeId i) const { return to_ones_[i]; }
    double weight_to_zeros(NodeId i) const { return to_zeros_[i]; }

    /// b_i^+ = (1 - x_i)(W x)_i and b_i^- = x_i (W (1 - x))_i.
    double up_weight(NodeId i) const { return x_[i] ? 0.0 : to_ones_[i]; }
    double down_weight(NodeId i) const { return x_[i] ? to_zeros_[i] : 0.0; }

    std::uint64_t mask() const;

    /// Fresh build from the current bits, for checking incremental updates.
    Configuration recomputed(const Graph& g) const { return Configuration(g, x_); }

private:
    std::vector<std::uint8_t> x_;
    std::vector<double> to_ones_;
    std::vector<double> to_zeros_;
    std::vector<std::uint32_t> ones_nbrs_;
    std::vector<std::uint32_t> zeros_nbrs_;
    std::size_t ones_ = 0;
    double b_ = 0.0;
};

/// True when a <= b componentwise.
bool dominates(std::span<const std::uint8_t> b, std::span<const std::uint8_t> a);

}  // namespace evospread

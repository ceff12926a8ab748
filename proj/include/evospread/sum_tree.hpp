#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace evospread {

/// Complete binary tree of partial sums over nonnegative slot weights.
/// Internal nodes are always recomputed from their children, so values do
/// not drift however many updates are applied. O(log n) set and sample.
class SumTree {
public:
    SumTree() = default;
    explicit SumTree(std::size_t slots);

    std::size_t slots() const noexcept { return slots_; }
    double total() const noexcept { return tree_[1]; }
    double get(std::size_t slot) const { return tree_[leaves_ + slot]; }

    void set(std::size_t slot, double value);

    /// Writes a leaf without touching its ancestors; call rebuild() after a
    /// batch of stage() calls.
    void stage(std::size_t slot, double value) { tree_[leaves_ + slot] = value; }
    void rebuild();

    void assign(std::span<const double> values);

    /// Slot whose cumulative interval contains r, for r in [0, total()).
    /// Never returns a zero-weight slot while total() > 0.
    std::size_t sample(double r) const;

    /// Cost in node visits of one set(); used to choose between per-slot
    /// updates and a full rebuild.
    std::size_t depth() const noexcept { return depth_; }
    std::size_t internal_nodes() const noexcept { return leaves_; }

private:
    std::size_t slots_ = 0;
    std::size_t leaves_ = 1;
    std::size_t depth_ = 0;
    std::vector<double> tree_ = std::vector<double>(2, 0.0);
};

}  // namespace evospread

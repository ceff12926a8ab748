#include "evospread/sum_tree.hpp"

#include <algorithm>

namespace evospread {

SumTree::SumTree(std::size_t slots) : slots_(slots) {
    leaves_ = 1;
    depth_ = 0;
    while (leaves_ < std::max<std::size_t>(slots, 1)) {
        leaves_ <<= 1;
        ++depth_;
    }
    tree_.assign(2 * leaves_, 0.0);
}

void SumTree::set(std::size_t slot, double value) {
    std::size_t k = leaves_ + slot;
    tree_[k] = value;
    for (k >>= 1; k >= 1; k >>= 1) tree_[k] = tree_[2 * k] + tree_[2 * k + 1];
}

void SumTree::rebuild() {
    for (std::size_t k = leaves_ - 1; k >= 1; --k) tree_[k] = tree_[2 * k] + tree_[2 * k + 1];
}

void SumTree::assign(std::span<const double> values) {
    std::fill(tree_.begin(), tree_.end(), 0.0);
    std::copy(values.begin(), values.end(), tree_.begin() + static_cast<std::ptrdiff_t>(leaves_));
    rebuild();
}

std::size_t SumTree::sample(double r) const {
    std::size_t k = 1;
    while (k < leaves_) {
        const double left = tree_[2 * k];
        const double right = tree_[2 * k + 1];
        if ((r < left && left > 0.0) || right <= 0.0) {
            k = 2 * k;
        } else {
            r -= left;
            k = 2 * k + 1;
        }
    }
    return k - leaves_;
}

}  // namespace evospread

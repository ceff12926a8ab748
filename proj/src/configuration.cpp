#include "evospread/configuration.hpp"

#include "evospread/errors.hpp"

namespace evospread {

Configuration::Configuration(const Graph& g, std::vector<std::uint8_t> bits) : x_(std::move(bits)) {
    const std::size_t n = g.size();
    if (x_.size() != n) throw Error(ErrorKind::InvalidParams, "configuration length differs from n");
    for (auto& v : x_) v = v ? 1 : 0;
    to_ones_.assign(n, 0.0);
    to_zeros_.assign(n, 0.0);
    ones_nbrs_.assign(n, 0);
    zeros_nbrs_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = g.neighbors(static_cast<NodeId>(i));
        const auto wt = g.weights(static_cast<NodeId>(i));
        for (std::size_t e = 0; e < nb.size(); ++e) {
            if (x_[nb[e]]) {
                to_ones_[i] += wt[e];
                ++ones_nbrs_[i];
            } else {
                to_zeros_[i] += wt[e];
                ++zeros_nbrs_[i];
            }
        }
        ones_ += x_[i];
    }
    b_ = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (!x_[i]) b_ += to_ones_[i];
}

Configuration Configuration::zeros(const Graph& g) {
    return Configuration(g, std::vector<std::uint8_t>(g.size(), 0));
}

Configuration Configuration::ones_on(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<std::uint8_t> x(g.size(), 0);
    for (auto v : nodes) {
        if (v >= g.size()) throw Error(ErrorKind::InvalidParams, "node out of range");
        x[v] = 1;
    }
    return Configuration(g, std::move(x));
}

Configuration Configuration::from_mask(const Graph& g, std::uint64_t mask) {
    if (g.size() > 64) throw Error(ErrorKind::TooLarge, "bitmask configurations need n <= 64");
    std::vector<std::uint8_t> x(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) x[i] = (mask >> i) & 1u;
    return Configuration(g, std::move(x));
}

void Configuration::flip(const Graph& g, NodeId k) {
    const auto nb = g.neighbors(k);
    const auto wt = g.weights(k);
    if (x_[k]) {
        b_ += to_ones_[k] - to_zeros_[k];
        x_[k] = 0;
        --ones_;
        for (std::size_t e = 0; e < nb.size(); ++e) {
            const NodeId j = nb[e];
            to_ones_[j] -= wt[e];
            to_zeros_[j] += wt[e];
            if (--ones_nbrs_[j] == 0) to_ones_[j] = 0.0;
            ++zeros_nbrs_[j];
        }
    } else {
        b_ += to_zeros_[k] - to_ones_[k];
        x_[k] = 1;
        ++ones_;
        for (std::size_t e = 0; e < nb.size(); ++e) {
            const NodeId j = nb[e];
            to_ones_[j] += wt[e];
            to_zeros_[j] -= wt[e];
            ++ones_nbrs_[j];
            if (--zeros_nbrs_[j] == 0) to_zeros_[j] = 0.0;
        }
    }
    if (ones_ == 0 || ones_ == x_.size()) b_ = 0.0;
}

std::uint64_t Configuration::mask() const {
    if (x_.size() > 64) throw Error(ErrorKind::TooLarge, "bitmask configurations need n <= 64");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        if (x_[i]) m |= std::uint64_t{1} << i;
    return m;
}

bool dominates(std::span<const std::uint8_t> b, std::span<const std::uint8_t> a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

}  // namespace evospread

#include "evospread/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "evospread/errors.hpp"

namespace evospread {

std::string_view to_string(GraphTag tag) {
    switch (tag) {
    case GraphTag::Complete: return "complete";
    case GraphTag::Ring: return "ring";
    case GraphTag::Sbm: return "sbm";
    case GraphTag::ErdosRenyi: return "er";
    case GraphTag::Custom: return "custom";
    }
    return "custom";
}

GraphTag parse_graph_tag(std::string_view text) {
    if (text == "complete") return GraphTag::Complete;
    if (text == "ring") return GraphTag::Ring;
    if (text == "sbm") return GraphTag::Sbm;
    if (text == "er") return GraphTag::ErdosRenyi;
    if (text == "custom") return GraphTag::Custom;
    throw Error(ErrorKind::ParseError, "unknown graph tag '" + std::string(text) + "'");
}

bool is_connected(std::size_t n, std::span<const Edge> edges) {
    if (n == 0) return false;
    // Union-find with path halving.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    std::size_t components = n;
    for (const auto& e : edges) {
        auto a = find(e.i), b = find(e.j);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

Graph Graph::build(std::size_t n, std::span<const Edge> edges, double alpha, GraphTag tag) {
    if (n == 0) throw Error(ErrorKind::InvalidParams, "graph needs at least one node");
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        if (e.i >= n || e.j >= n)
            throw Error(ErrorKind::InvalidParams, "edge endpoint out of range");
        if (e.i == e.j)
            throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(e.i));
        if (!(e.w > 0.0))
            throw Error(ErrorKind::NonPositiveWeight,
                        "edge " + std::to_string(e.i) + "-" + std::to_string(e.j));
        const std::uint64_t lo = std::min(e.i, e.j), hi = std::max(e.i, e.j);
        if (!seen.insert((lo << 32) | hi).second)
            throw Error(ErrorKind::DuplicateEdge,
                        "edge " + std::to_string(lo) + "-" + std::to_string(hi));
    }
    if (n > 1 && !is_connected(n, edges))
        throw Error(ErrorKind::Disconnected, "graph with " + std::to_string(n) + " nodes");
    if (n == 1) throw Error(ErrorKind::Disconnected, "single node graph has no links");

    Graph g;
    g.n_ = n;
    g.alpha_ = alpha;
    g.tag_ = tag;
    g.edges_.reserve(edges.size());
    for (const auto& e : edges)
        g.edges_.push_back({std::min(e.i, e.j), std::max(e.i, e.j), e.w});

    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : g.edges_) {
        ++deg[e.i];
        ++deg[e.j];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.adj_.resize(g.offsets_[n]);
    g.adj_w_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : g.edges_) {
        g.adj_[fill[e.i]] = e.j;
        g.adj_w_[fill[e.i]++] = e.w;
        g.adj_[fill[e.j]] = e.i;
        g.adj_w_[fill[e.j]++] = e.w;
    }
    // Sort each adjacency row by neighbour id so weight() can binary search.
    std::vector<std::pair<NodeId, double>> row;
    for (std::size_t i = 0; i < n; ++i) {
        row.clear();
        for (auto k = g.offsets_[i]; k < g.offsets_[i + 1]; ++k) row.emplace_back(g.adj_[k], g.adj_w_[k]);
        std::sort(row.begin(), row.end());
        for (std::size_t k = 0; k < row.size(); ++k) {
            g.adj_[g.offsets_[i] + k] = row[k].first;
            g.adj_w_[g.offsets_[i] + k] = row[k].second;
        }
    }
    g.strength_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (auto k = g.offsets_[i]; k < g.offsets_[i + 1]; ++k) s += g.adj_w_[k];
        g.strength_[i] = s;
    }
    g.max_degree_ = *std::max_element(deg.begin(), deg.end());
    for (const auto& e : g.edges_) g.total_weight_ += e.w;
    return g;
}

double Graph::weight(NodeId i, NodeId j) const {
    auto nb = neighbors(i);
    auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return 0.0;
    return weights(i)[static_cast<std::size_t>(it - nb.begin())];
}

double boundary(const Graph& g, std::span<const std::uint8_t> in_set) {
    double z = 0.0;
    for (const auto& e : g.edges())
        if ((in_set[e.i] != 0) != (in_set[e.j] != 0)) z += e.w;
    return z;
}

double boundary(const Graph& g, std::span<const NodeId> subset) {
    std::vector<std::uint8_t> flags(g.size(), 0);
    for (auto v : subset) {
        if (v >= g.size()) throw Error(ErrorKind::InvalidParams, "subset node out of range");
        flags[v] = 1;
    }
    return boundary(g, flags);
}

double boundary_mask(const Graph& g, std::uint64_t mask) {
    if (g.size() > 64) throw Error(ErrorKind::TooLarge, "bitmask boundary needs n <= 64");
    double z = 0.0;
    for (const auto& e : g.edges())
        if (((mask >> e.i) & 1u) != ((mask >> e.j) & 1u)) z += e.w;
    return z;
}

}  // namespace evospread

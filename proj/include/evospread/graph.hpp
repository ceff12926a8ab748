#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evospread/rng.hpp"

namespace evospread {

using NodeId = std::uint32_t;

/// Provenance of a graph; closed-form profiles are only offered for
/// complete and ring graphs.
enum class GraphTag { Complete, Ring, Sbm, ErdosRenyi, Custom };

std::string_view to_string(GraphTag tag);
GraphTag parse_graph_tag(std::string_view text);

struct Edge {
    NodeId i = 0;
    NodeId j = 0;
    double w = 0.0;
};

/// Weighted undirected connected graph in compressed adjacency form.
/// Immutable after construction.
class Graph {
public:
    Graph() = default;

    /// Validates and builds. Throws SelfLoop, DuplicateEdge,
    /// NonPositiveWeight, InvalidParams (node out of range) or Disconnected.
    static Graph build(std::size_t n, std::span<const Edge> edges, double alpha = 0.0,
                       GraphTag tag = GraphTag::Custom);

    std::size_t size() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    double alpha() const noexcept { return alpha_; }
    GraphTag tag() const noexcept { return tag_; }
    std::size_t max_degree() const noexcept { return max_degree_; }
    double total_weight() const noexcept { return total_weight_; }

    std::span<const NodeId> neighbors(NodeId i) const {
        return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::span<const double> weights(NodeId i) const {
        return {adj_w_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
    double strength(NodeId i) const { return strength_[i]; }

    /// w_ij, or 0 when the pair is not linked.
    double weight(NodeId i, NodeId j) const;

    /// Edges with i < j, in the order given at construction.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Size of the first community (nodes 0..n1-1) for two-block graphs.
    std::optional<std::size_t> first_block_size() const noexcept { return first_block_; }
    void set_first_block_size(std::size_t n1) { first_block_ = n1; }

private:
    std::size_t n_ = 0;
    double alpha_ = 0.0;
    GraphTag tag_ = GraphTag::Custom;
    std::size_t max_degree_ = 0;
    double total_weight_ = 0.0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adj_;
    std::vector<double> adj_w_;
    std::vector<double> strength_;
    std::optional<std::size_t> first_block_;
};

bool is_connected(std::size_t n, std::span<const Edge> edges);

// Generators. Benchmark families use the uniform weight alpha / Delta.

Graph complete(std::size_t n, double alpha);
Graph ring(std::size_t n, double alpha);

struct SbmParams {
    std::size_t n = 0;
    double c = 0.5;       ///< fraction of nodes in the first community, in (0, 1/2]
    double p = 0.0;       ///< intra-community link probability
    std::size_t L = 1;    ///< number of distinct inter-community links
    double alpha = 1.0;
    double delta = 0.0;   ///< weight divisor; 0 uses the realized maximum degree
};

/// Two-block stochastic block model, regenerated until connected.
Graph sbm(const SbmParams& params, Engine& engine, std::size_t max_attempts = 100);

/// Erdos-Renyi G(n, p), regenerated until connected.
Graph erdos_renyi(std::size_t n, double p, double alpha, Engine& engine,
                  std::size_t max_attempts = 100);

/// Path 0-1-...-(n-1) and star centred at 0, both with a common weight.
Graph path(std::size_t n, double w = 1.0);
Graph star(std::size_t n, double w = 1.0);

// Boundary computations.

/// Weighted boundary of the node set given by membership flags.
double boundary(const Graph& g, std::span<const std::uint8_t> in_set);

/// Weighted boundary of an explicit node list (duplicates ignored).
double boundary(const Graph& g, std::span<const NodeId> subset);

/// Weighted boundary of a bitmask subset; requires n <= 64.
double boundary_mask(const Graph& g, std::uint64_t mask);

}  // namespace evospread

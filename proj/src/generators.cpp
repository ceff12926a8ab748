#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "evospread/errors.hpp"
#include "evospread/graph.hpp"

namespace evospread {

namespace {

/// Appends each pair {offset+i, offset+j} (i < j < m) independently with
/// probability p, using geometric skips over the pair index.
void bernoulli_block(std::size_t m, std::size_t offset, double p, Engine& engine,
                     std::vector<Edge>& out) {
    if (m < 2 || p <= 0.0) return;
    if (p >= 1.0) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                out.push_back({static_cast<NodeId>(offset + i), static_cast<NodeId>(offset + j), 0.0});
        return;
    }
    const double log_q = std::log1p(-p);
    // Row v holds pairs (v, w) with w < v.
    std::int64_t v = 1, w = -1;
    const auto mm = static_cast<std::int64_t>(m);
    while (v < mm) {
        const double u = uniform01(engine);
        w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / log_q));
        while (w >= v && v < mm) {
            w -= v;
            ++v;
        }
        if (v < mm)
            out.push_back({static_cast<NodeId>(offset + w), static_cast<NodeId>(offset + v), 0.0});
    }
}

std::size_t realized_max_degree(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : edges) {
        ++deg[e.i];
        ++deg[e.j];
    }
    return n == 0 ? 0 : *std::max_element(deg.begin(), deg.end());
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidParams, "alpha must be positive");
}

}  // namespace

Graph complete(std::size_t n, double alpha) {
    if (n < 2) throw Error(ErrorKind::InvalidParams, "complete graph needs n >= 2");
    require_alpha(alpha);
    const double w = alpha / static_cast<double>(n - 1);
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), w});
    return Graph::build(n, edges, alpha, GraphTag::Complete);
}

Graph ring(std::size_t n, double alpha) {
    if (n < 3) throw Error(ErrorKind::RingTooSmall, "ring needs n >= 3, got " + std::to_string(n));
    require_alpha(alpha);
    const double w = alpha / 2.0;
    std::vector<Edge> edges;
    edges.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n), w});
    return Graph::build(n, edges, alpha, GraphTag::Ring);
}

Graph sbm(const SbmParams& prm, Engine& engine, std::size_t max_attempts) {
    if (!(prm.c > 0.0 && prm.c <= 0.5)) throw Error(ErrorKind::InvalidParams, "c must lie in (0, 1/2]");
    if (!(prm.p > 0.0 && prm.p <= 1.0)) throw Error(ErrorKind::InvalidParams, "p must lie in (0, 1]");
    if (prm.L < 1) throw Error(ErrorKind::InvalidParams, "L must be at least 1");
    require_alpha(prm.alpha);
    const auto n1 = static_cast<std::size_t>(std::floor(prm.c * static_cast<double>(prm.n)));
    const std::size_t n2 = prm.n - n1;
    if (n1 < 1) throw Error(ErrorKind::InvalidParams, "first community is empty");
    if (prm.L > n1 * n2) throw Error(ErrorKind::InvalidParams, "L exceeds the number of cross pairs");

    std::vector<Edge> edges;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        edges.clear();
        bernoulli_block(n1, 0, prm.p, engine, edges);
        bernoulli_block(n2, n1, prm.p, engine, edges);
        std::unordered_set<std::uint64_t> cross;
        while (cross.size() < prm.L) {
            const auto i = uniform_index(engine, n1);
            const auto j = n1 + uniform_index(engine, n2);
            if (cross.insert((i << 32) | j).second)
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 0.0});
        }
        if (!is_connected(prm.n, edges)) continue;
        const double delta = prm.delta > 0.0 ? prm.delta : static_cast<double>(realized_max_degree(prm.n, edges));
        const double w = prm.alpha / delta;
        for (auto& e : edges) e.w = w;
        auto g = Graph::build(prm.n, edges, prm.alpha, GraphTag::Sbm);
        g.set_first_block_size(n1);
        return g;
    }
    throw Error(ErrorKind::GenerationFailed,
                "SBM not connected after " + std::to_string(max_attempts) + " attempts");
}

Graph erdos_renyi(std::size_t n, double p, double alpha, Engine& engine, std::size_t max_attempts) {
    if (n < 2) throw Error(ErrorKind::InvalidParams, "Erdos-Renyi graph needs n >= 2");
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParams, "p must lie in [0, 1]");
    require_alpha(alpha);
    std::vector<Edge> edges;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        edges.clear();
        bernoulli_block(n, 0, p, engine, edges);
        if (!is_connected(n, edges)) continue;
        const double w = alpha / static_cast<double>(realized_max_degree(n, edges));
        for (auto& e : edges) e.w = w;
        return Graph::build(n, edges, alpha, GraphTag::ErdosRenyi);
    }
    throw Error(ErrorKind::GenerationFailed,
                "Erdos-Renyi graph not connected after " + std::to_string(max_attempts) + " attempts");
}

Graph path(std::size_t n, double w) {
    if (n < 2) throw Error(ErrorKind::InvalidParams, "path needs n >= 2");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1), w});
    return Graph::build(n, edges);
}

Graph star(std::size_t n, double w) {
    if (n < 2) throw Error(ErrorKind::InvalidParams, "star needs n >= 2");
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) edges.push_back({0, static_cast<NodeId>(i), w});
    return Graph::build(n, edges);
}

}  // namespace evospread

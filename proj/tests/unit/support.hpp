#pragma once

// Test-only helpers. The oracles here are written from the model
// definition directly and share no code with the library solvers.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "evospread/graph.hpp"
#include "evospread/rng.hpp"

namespace testsupport {

struct Stats {
    double mean = 0.0;
    double se = 0.0;
};

inline Stats stats(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return {m, std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
}

/// Dense Gauss-Jordan solve with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        if (A[c][c] == 0.0) throw std::runtime_error("singular");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = A[r][c] / A[c][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
    return b;
}

/// E[T | 0] and E[J | 0] for a constant control vector u, built from the
/// rate definitions with a dense weight matrix. Small n only.
struct DenseAnswer {
    double time;
    double cost;
};

inline DenseAnswer dense_constant_oracle(const evospread::Graph& g, double beta, const std::vector<double>& u) {
    const std::size_t n = g.size();
    std::vector<std::vector<double>> W(n, std::vector<double>(n, 0.0));
    for (const auto& e : g.edges()) W[e.i][e.j] = W[e.j][e.i] = e.w;
    const std::size_t S = std::size_t{1} << n;
    double total_u = 0.0;
    for (double x : u) total_u += x;
    std::vector<std::vector<double>> A(S, std::vector<double>(S, 0.0));
    std::vector<double> bt(S, 0.0), bj(S, 0.0);
    for (std::size_t x = 0; x < S; ++x) {
        if (x == S - 1) {
            A[x][x] = 1.0;
            continue;
        }
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool xi = (x >> i) & 1u;
            double to_ones = 0.0, to_zeros = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if ((x >> j) & 1u) to_ones += W[i][j];
                else to_zeros += W[i][j];
            }
            const double lam = xi ? (1.0 - beta) * to_zeros : beta * to_ones + u[i];
            if (lam == 0.0) continue;
            A[x][x ^ (std::size_t{1} << i)] -= lam;
            r += lam;
        }
        A[x][x] += r;
        bt[x] = 1.0;
        bj[x] = total_u;
    }
    return {dense_solve(A, bt)[0], dense_solve(A, bj)[0]};
}

/// Brute-force phi and eta from boundary sums over explicit subsets.
inline void brute_profiles(const evospread::Graph& g, std::vector<double>& phi, std::vector<double>& eta) {
    const std::size_t n = g.size();
    phi.assign(n - 1, INFINITY);
    eta.assign(n - 1, 0.0);
    for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << n); ++m) {
        double z = 0.0;
        for (const auto& e : g.edges())
            if (((m >> e.i) & 1u) != ((m >> e.j) & 1u)) z += e.w;
        const std::size_t a = static_cast<std::size_t>(__builtin_popcountll(m));
        phi[a - 1] = std::min(phi[a - 1], z);
        eta[a - 1] = std::max(eta[a - 1], z);
    }
}

/// Random connected graph: a random spanning tree plus extra edges.
inline evospread::Graph random_connected(std::size_t n, double extra_p, evospread::Engine& eng) {
    std::vector<evospread::Edge> edges;
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    for (std::size_t v = 1; v < n; ++v) {
        const auto u = static_cast<evospread::NodeId>(evospread::uniform_index(eng, v));
        edges.push_back({u, static_cast<evospread::NodeId>(v), 0.2 + evospread::uniform01(eng)});
        has[u][v] = has[v][u] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!has[i][j] && evospread::uniform01(eng) < extra_p)
                edges.push_back({static_cast<evospread::NodeId>(i), static_cast<evospread::NodeId>(j),
                                 0.2 + evospread::uniform01(eng)});
    return evospread::Graph::build(n, edges);
}

}  // namespace testsupport

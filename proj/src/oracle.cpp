#include "evospread/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <algorithm>
#include <bit>
#include <cmath>

#include "evospread/configuration.hpp"
#include "evospread/errors.hpp"

namespace evospread {

namespace {

constexpr std::size_t kDirectLimit = 10;

struct Transition {
    std::uint64_t to;
    double rate;
};

struct Chain {
    std::vector<std::vector<Transition>> out;
    std::vector<double> rate;       // r(x)
    std::vector<double> cost_rate;  // 1^T U(x)
};

Chain build_chain(const Graph& g, double beta, const ControlPolicy& policy) {
    const std::size_t n = g.size();
    const std::uint64_t states = std::uint64_t{1} << n;
    const std::uint64_t full = states - 1;
    Chain chain;
    chain.out.resize(states);
    chain.rate.assign(states, 0.0);
    chain.cost_rate.assign(states, 0.0);
    for (std::uint64_t x = 0; x < full; ++x) {
        const auto conf = Configuration::from_mask(g, x);
        const auto ctrl = control_rates(policy, conf, 0.0);
        const auto nr = node_rates(g, beta, conf, ctrl.u);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double lam = (x >> i) & 1u ? nr.lambda_minus[i] : nr.lambda_plus[i];
            if (lam > 0.0) {
                chain.out[x].push_back({x ^ (std::uint64_t{1} << i), lam});
                r += lam;
            }
        }
        if (!(r > 0.0))
            throw Error(ErrorKind::Unreachable, "configuration " + std::to_string(x) + " has zero exit rate");
        chain.rate[x] = r;
        chain.cost_rate[x] = ctrl.total;
    }
    return chain;
}

// Residual of E(x) - sum_y P(x,y) E(y) = b(x) / r(x), in long double.
double residual(const Chain& chain, const std::vector<double>& e, const std::vector<double>& b,
                std::vector<double>* correction_rhs = nullptr) {
    long double worst = 0.0L;
    const std::size_t states = e.size();
    if (correction_rhs) correction_rhs->assign(states, 0.0);
    for (std::size_t x = 0; x + 1 < states; ++x) {
        long double acc = static_cast<long double>(chain.rate[x]) * e[x] - b[x];
        for (const auto& tr : chain.out[x]) acc -= static_cast<long double>(tr.rate) * e[tr.to];
        if (correction_rhs) (*correction_rhs)[x] = static_cast<double>(-acc);
        worst = std::max(worst, std::fabs(acc / chain.rate[x]));
    }
    long double last = std::fabs(static_cast<long double>(e.back()));
    return static_cast<double>(std::max(worst, last));
}

std::vector<double> solve_acyclic(const Chain& chain, const std::vector<double>& b, std::size_t n) {
    const std::size_t states = b.size();
    std::vector<double> e(states, 0.0);
    for (int level = static_cast<int>(n) - 1; level >= 0; --level) {
        for (std::uint64_t x = 0; x + 1 < states; ++x) {
            if (std::popcount(x) != level) continue;
            double acc = b[x];
            for (const auto& tr : chain.out[x]) acc += tr.rate * e[tr.to];
            e[x] = acc / chain.rate[x];
        }
    }
    return e;
}

}  // namespace

ExactSolution solve_exact(const Graph& g, double beta, const ControlPolicy& policy, std::size_t limit) {
    const std::size_t n = g.size();
    if (n > limit || n > 30) throw Error(ErrorKind::TooLarge, "oracle limited to n <= " + std::to_string(limit));
    if (!(beta > 0.5 && beta <= 1.0)) throw Error(ErrorKind::InvalidBeta, "beta must lie in (1/2, 1]");
    if (!is_time_homogeneous(policy))
        throw Error(ErrorKind::NonHomogeneousPolicy, "oracle needs a time-homogeneous policy");
    validate_policy(policy, n, false);

    const Chain chain = build_chain(g, beta, policy);
    const std::size_t states = chain.rate.size();
    std::vector<double> ones(states, 1.0), cost = chain.cost_rate;
    ones.back() = 0.0;
    cost.back() = 0.0;

    ExactSolution sol;
    sol.n = n;
    if (beta == 1.0) {
        sol.expected_time = solve_acyclic(chain, ones, n);
        sol.expected_cost = solve_acyclic(chain, cost, n);
    } else {
        // Rows x: r(x) E(x) - sum_y lambda(x,y) E(y) = b(x); all-1 row pins E = 0.
        using SpMat = Eigen::SparseMatrix<double>;
        std::vector<Eigen::Triplet<double>> trips;
        for (std::size_t x = 0; x + 1 < states; ++x) {
            trips.emplace_back(static_cast<int>(x), static_cast<int>(x), chain.rate[x]);
            for (const auto& tr : chain.out[x])
                if (tr.to + 1 != states) trips.emplace_back(static_cast<int>(x), static_cast<int>(tr.to), -tr.rate);
        }
        trips.emplace_back(static_cast<int>(states - 1), static_cast<int>(states - 1), 1.0);
        SpMat A(static_cast<int>(states), static_cast<int>(states));
        A.setFromTriplets(trips.begin(), trips.end());
        A.makeCompressed();
        // Direct factorisation while fill-in stays small; BiCGSTAB beyond.
        const bool direct = n <= kDirectLimit;
        Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
        Eigen::BiCGSTAB<SpMat> it;
        if (direct) {
            lu.compute(A);
            if (lu.info() != Eigen::Success) throw Error(ErrorKind::Unreachable, "singular first-step system");
        } else {
            it.setTolerance(1e-15);
            it.setMaxIterations(20000);
            it.compute(A);
            if (it.info() != Eigen::Success) throw Error(ErrorKind::Unreachable, "singular first-step system");
        }
        auto apply = [&](const std::vector<double>& b) {
            const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(states));
            Eigen::VectorXd v = direct ? Eigen::VectorXd(lu.solve(rhs)) : Eigen::VectorXd(it.solve(rhs));
            return std::vector<double>(v.data(), v.data() + states);
        };

        auto solve = [&](const std::vector<double>& b) {
            std::vector<double> e = apply(b);
            std::vector<double> corr;
            for (int k = 0; k < 8 && residual(chain, e, b, &corr) >= 1e-13; ++k) {
                const auto d = apply(corr);
                for (std::size_t x = 0; x < states; ++x) e[x] += d[x];
            }
            return e;
        };
        sol.expected_time = solve(ones);
        sol.expected_cost = solve(cost);
    }
    sol.expected_time.back() = 0.0;
    sol.expected_cost.back() = 0.0;
    sol.residual = std::max(residual(chain, sol.expected_time, ones), residual(chain, sol.expected_cost, cost));
    return sol;
}

double solve_birth_death(double beta, std::size_t n, std::size_t a) {
    if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorKind::InvalidBeta, "beta must lie in (0, 1]");
    if (a < 1 || a > n) throw Error(ErrorKind::InvalidParams, "a must lie in [1, n]");
    if (a == n) return 1.0;
    // Unknowns p_a .. p_{n-1}; p_{a-1} = 0 and p_n = 1.
    // p_k - beta p_{k+1} - (1 - beta) p_{k-1} = 0.
    const std::size_t m = n - a;
    std::vector<double> lower(m, -(1.0 - beta)), diag(m, 1.0), upper(m, -beta), rhs(m, 0.0);
    rhs[m - 1] = beta;
    for (std::size_t k = 1; k < m; ++k) {
        const double f = lower[k] / diag[k - 1];
        diag[k] -= f * upper[k - 1];
        rhs[k] -= f * rhs[k - 1];
    }
    std::vector<double> p(m);
    p[m - 1] = rhs[m - 1] / diag[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) p[k] = (rhs[k] - upper[k] * p[k + 1]) / diag[k];
    return p[0];
}

}  // namespace evospread

#include "evospread/profiles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "evospread/errors.hpp"

namespace evospread {

namespace {

Profiles exhaustive(const Graph& g) {
    const std::size_t n = g.size();
    Profiles out;
    out.mode = ProfileMode::Exact;
    out.phi.assign(n - 1, std::numeric_limits<double>::infinity());
    out.eta.assign(n - 1, 0.0);

    // Gray-code walk: consecutive subsets differ by one node, so the
    // boundary changes by that node's contribution only.
    std::vector<std::uint8_t> in(n, 0);
    std::vector<double> to_inside(n, 0.0);  // (W x)_i for the current subset
    double z = 0.0;
    std::size_t size = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const auto v = static_cast<NodeId>(std::countr_zero(k));
        const double inside = to_inside[v];
        const double outside = g.strength(v) - inside;
        const auto nb = g.neighbors(v);
        const auto wt = g.weights(v);
        if (in[v]) {
            in[v] = 0;
            --size;
            z += inside - outside;
            for (std::size_t e = 0; e < nb.size(); ++e) to_inside[nb[e]] -= wt[e];
        } else {
            in[v] = 1;
            ++size;
            z += outside - inside;
            for (std::size_t e = 0; e < nb.size(); ++e) to_inside[nb[e]] += wt[e];
        }
        if (size == 0 || size == n) continue;
        // The running sum drifts by a few ulps, so a new record is confirmed
        // by a direct recomputation; near-ties with the record are skipped.
        auto& lo = out.phi[size - 1];
        auto& hi = out.eta[size - 1];
        const double tol = 1e-11 * (1.0 + std::abs(z));
        if (z < lo - tol || z > hi + tol) {
            const double exact = boundary(g, std::span<const std::uint8_t>(in));
            lo = std::min(lo, exact);
            hi = std::max(hi, exact);
        }
    }
    return out;
}

}  // namespace

Profiles profiles(const Graph& g, ProfileMode mode, std::size_t exhaustive_limit) {
    const std::size_t n = g.size();
    if (mode == ProfileMode::Exact) {
        if (n > exhaustive_limit || n > 62)
            throw Error(ErrorKind::TooLargeForExhaustive,
                        "n = " + std::to_string(n) + " exceeds limit " + std::to_string(exhaustive_limit));
        return exhaustive(g);
    }
    if (mode != ProfileMode::ClosedForm)
        throw Error(ErrorKind::NoClosedForm, "analytic bounds come from sbm_phi_bound");

    Profiles out;
    out.mode = ProfileMode::ClosedForm;
    out.phi.resize(n - 1);
    out.eta.resize(n - 1);
    if (g.tag() == GraphTag::Complete) {
        const double w = g.edges().front().w;
        for (std::size_t a = 1; a < n; ++a) {
            out.phi[a - 1] = w * static_cast<double>(a) * static_cast<double>(n - a);
            out.eta[a - 1] = out.phi[a - 1];
        }
    } else if (g.tag() == GraphTag::Ring) {
        const double w = g.edges().front().w;
        for (std::size_t a = 1; a < n; ++a) {
            out.phi[a - 1] = 2.0 * w;
            out.eta[a - 1] = 2.0 * w * static_cast<double>(std::min(a, n - a));
        }
    } else {
        throw Error(ErrorKind::NoClosedForm,
                    "no closed form for graph tagged " + std::string(to_string(g.tag())));
    }
    return out;
}

std::vector<double> sbm_phi_bound(std::size_t n, double c, double p, double alpha, std::size_t L) {
    if (!(c > 0.0 && c <= 0.5) || !(p > 0.0 && p <= 1.0) || !(alpha > 0.0) || L < 1 || n < 2)
        throw Error(ErrorKind::InvalidParams, "invalid SBM parameters");
    const auto n1 = static_cast<std::size_t>(std::floor(c * static_cast<double>(n)));
    const std::size_t n2 = n - n1;
    const double gamma = c * alpha * p / 2.0;
    std::vector<double> out(n - 1);
    for (std::size_t h = 1; h < n; ++h) {
        double value;
        if (h == n1 || h == n2) {
            value = static_cast<double>(L) * alpha / static_cast<double>(n);
        } else if (h < n1) {
            value = gamma * static_cast<double>(std::min(h, n1 - h));
        } else if (h <= n2) {
            value = gamma * static_cast<double>(std::min(h - n1, n2 - h));
        } else {
            value = gamma * static_cast<double>(std::min(h - n2, n - h));
        }
        out[h - 1] = value;
    }
    return out;
}

std::vector<double> floor_profile(std::span<const double> phi, double K) {
    if (!(K >= 0.0)) throw Error(ErrorKind::InvalidParams, "K must be nonnegative");
    std::vector<double> out(phi.begin(), phi.end());
    for (auto& v : out) v = std::max(v, K);
    return out;
}

}  // namespace evospread

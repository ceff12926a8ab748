#include "evospread/coupled.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "evospread/errors.hpp"

namespace evospread {

namespace {

struct Side {
    Configuration conf;
    SimResult res;
    double beta = 1.0;
    bool done = false;
};

void flip_side(const Graph& g, Side& s, NodeId v) {
    s.conf.flip(g, v);
    ++s.res.events;
}

CoupledResult run_coupled(const Graph& g, const ControlPolicy& policy, Side x, Side y, bool control_on_y,
                          Engine& engine, std::uint64_t max_events) {
    const std::size_t n = g.size();
    const auto& edges = g.edges();
    std::vector<double> link_cum(edges.size());
    double acc = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) link_cum[e] = acc += edges[e].w;
    const double W = acc;

    const auto* constant = std::get_if<ConstantPolicy>(&policy);
    const auto* open_loop = std::get_if<OpenLoopPolicy>(&policy);
    std::vector<double> ctrl_cum(n);
    double total_u = 0.0;
    std::size_t segment = 0;
    double next_break = std::numeric_limits<double>::infinity();
    auto load_segment = [&](std::size_t s) {
        const auto& u = constant ? constant->u : open_loop->rates[s];
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) ctrl_cum[i] = c += u[i];
        total_u = c;
        next_break = open_loop && s < open_loop->breakpoints.size() ? open_loop->breakpoints[s]
                                                                     : std::numeric_limits<double>::infinity();
    };
    load_segment(0);

    CoupledResult out;
    auto check = [&](NodeId v) {
        if (x.conf.state(v) && !y.conf.state(v)) out.dominated = false;
    };
    auto settle = [&](Side& s, double t) {
        if (!s.done && s.conf.all_ones()) {
            s.done = true;
            s.res.T = t;
            s.res.complete = true;
        }
    };
    for (std::size_t i = 0; i < n; ++i) check(static_cast<NodeId>(i));
    settle(x, 0.0);
    settle(y, 0.0);

    double t = 0.0;
    std::uint64_t ticks = 0;
    while (!(x.done && y.done) && ticks < max_events) {
        const double R = W + total_u;
        const double dt = exponential(engine, R);
        if (t + dt >= next_break) {
            for (Side* s : {&x, &y})
                if (!s->done) s->res.J += total_u * (next_break - t);
            t = next_break;
            load_segment(++segment);
            continue;
        }
        t += dt;
        ++ticks;
        for (Side* s : {&x, &y})
            if (!s->done) s->res.J += total_u * dt;

        const double r = uniform01(engine) * R;
        if (r < W) {
            const auto e = std::min<std::size_t>(
                static_cast<std::size_t>(std::upper_bound(link_cum.begin(), link_cum.end(), r) - link_cum.begin()),
                edges.size() - 1);
            const NodeId i = edges[e].i;
            const NodeId j = edges[e].j;
            // One conflict draw shared by both processes.
            const double conflict = uniform01(engine);
            for (Side* s : {&x, &y}) {
                if (s->conf.state(i) == s->conf.state(j)) continue;
                const NodeId zero = s->conf.state(i) ? j : i;
                const NodeId one = s->conf.state(i) ? i : j;
                flip_side(g, *s, conflict < s->beta ? zero : one);
            }
            check(i);
            check(j);
        } else {
            const auto k = static_cast<NodeId>(std::min<std::size_t>(
                static_cast<std::size_t>(std::upper_bound(ctrl_cum.begin(), ctrl_cum.end(), r - W) - ctrl_cum.begin()),
                n - 1));
            if (!x.conf.state(k)) {
                flip_side(g, x, k);
                ++x.res.Nc;
            }
            if (control_on_y && !y.conf.state(k)) {
                flip_side(g, y, k);
                ++y.res.Nc;
            }
            check(k);
        }
        settle(x, t);
        settle(y, t);
    }

    for (Side* s : {&x, &y})
        if (!s->done) s->res.T = t;
    x.res.final = std::move(x.conf);
    y.res.final = std::move(y.conf);
    out.x = std::move(x.res);
    out.y = std::move(y.res);
    return out;
}

}  // namespace

CoupledResult simulate_coupled_ordered(const Graph& g, double beta, double gamma, const ControlPolicy& policy,
                                       const std::vector<std::uint8_t>& x0, const std::vector<std::uint8_t>& y0,
                                       Engine& engine, std::uint64_t max_events) {
    if (std::holds_alternative<FeedbackPolicy>(policy))
        throw Error(ErrorKind::UnsupportedPolicy, "coupled simulation needs constant or open-loop control");
    for (double b : {beta, gamma})
        if (!(b > 0.5 && b <= 1.0)) throw Error(ErrorKind::InvalidBeta, "beta and gamma must lie in (1/2, 1]");
    if (beta > gamma) throw Error(ErrorKind::InvalidOrdering, "ordered coupling needs beta <= gamma");
    Side x{Configuration(g, x0), {}, beta};
    Side y{Configuration(g, y0), {}, gamma};
    if (!dominates(y.conf.bits(), x.conf.bits()))
        throw Error(ErrorKind::InvalidOrdering, "ordered coupling needs x0 <= y0");
    validate_policy(policy, g.size(), x.conf.all_zeros());
    return run_coupled(g, policy, std::move(x), std::move(y), true, engine, max_events);
}

CoupledResult simulate_coupled_seeded(const Graph& g, const ControlPolicy& policy,
                                      const std::vector<std::uint8_t>& x0, const std::vector<NodeId>& seed_set,
                                      Engine& engine, std::uint64_t max_events) {
    if (std::holds_alternative<FeedbackPolicy>(policy))
        throw Error(ErrorKind::UnsupportedPolicy, "coupled simulation needs constant or open-loop control");
    Side x{Configuration(g, x0), {}, 1.0};
    Side y{Configuration::ones_on(g, seed_set), {}, 1.0};
    validate_policy(policy, g.size(), x.conf.all_zeros());
    for (NodeId v : policy_support(policy, g.size()))
        if (!y.conf.state(v))
            throw Error(ErrorKind::SupportNotSeeded, "control reaches node " + std::to_string(v) + " outside the seed set");
    if (!dominates(y.conf.bits(), x.conf.bits()))
        throw Error(ErrorKind::InvalidOrdering, "x0 must lie below the seed indicator");
    return run_coupled(g, policy, std::move(x), std::move(y), false, engine, max_events);
}

}  // namespace evospread

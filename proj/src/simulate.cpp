#include "evospread/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "evospread/errors.hpp"
#include "evospread/sum_tree.hpp"

namespace evospread {

std::string_view to_string(JumpCause cause) {
    switch (cause) {
    case JumpCause::SpreadUp: return "spread-up";
    case JumpCause::SpreadDown: return "spread-down";
    case JumpCause::Control: return "control";
    }
    return "spread-up";
}

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

NodeId nth_zero(const Configuration& conf, std::uint64_t m) {
    for (std::size_t i = 0; i < conf.size(); ++i) {
        if (conf.state(static_cast<NodeId>(i))) continue;
        if (m == 0) return static_cast<NodeId>(i);
        --m;
    }
    throw Error(ErrorKind::NoZeroNode, "no 0-node left to control");
}

}  // namespace

SimResult simulate(const Graph& g, double beta, const ControlPolicy& policy,
                   const std::vector<std::uint8_t>& x0, Engine& engine, const SimOptions& options) {
    if (!(beta > 0.5 && beta <= 1.0)) throw Error(ErrorKind::InvalidBeta, "beta must lie in (1/2, 1]");
    const std::size_t n = g.size();
    Configuration conf(g, x0);
    validate_policy(policy, n, conf.all_zeros());

    const auto* feedback = std::get_if<FeedbackPolicy>(&policy);
    const auto* constant = std::get_if<ConstantPolicy>(&policy);
    const auto* open_loop = std::get_if<OpenLoopPolicy>(&policy);

    // Slot i holds beta * b_i^+, slot n + i holds (1 - beta) * b_i^-.
    SumTree spread(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<NodeId>(i);
        spread.stage(i, beta * conf.up_weight(v));
        spread.stage(n + i, (1.0 - beta) * conf.down_weight(v));
    }
    spread.rebuild();

    // Open-loop and constant control live in their own tree over u_i (1 - x_i).
    SumTree control(feedback ? 0 : n);
    const std::vector<double>* u = nullptr;
    double total_u = 0.0;
    std::size_t segment = 0;
    double next_break = kNever;
    auto load_segment = [&](std::size_t s) {
        u = constant ? &constant->u : &open_loop->rates[s];
        total_u = std::accumulate(u->begin(), u->end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) control.stage(i, conf.state(static_cast<NodeId>(i)) ? 0.0 : (*u)[i]);
        control.rebuild();
        next_break = open_loop && s < open_loop->breakpoints.size() ? open_loop->breakpoints[s] : kNever;
    };
    if (!feedback) load_segment(0);

    SimResult res;
    double t = 0.0;
    double c_acc = 0.0;

    while (!conf.all_ones()) {
        if (res.events >= options.max_events) {
            res.T = t;
            res.complete = false;
            res.final = std::move(conf);
            return res;
        }
        const double B = conf.boundary();
        const double S = spread.total();
        double C;
        double U1;
        if (feedback) {
            C = feedback_rate(*feedback, conf.ones(), B, n);
            U1 = C;
        } else {
            C = control.total();
            U1 = total_u;
        }
        const double R = S + C;

        if (!(R > 0.0) && next_break == kNever)
            throw Error(ErrorKind::PolicyViolatesAssumption2,
                        "no event can occur: zero control and empty boundary at t=" + std::to_string(t));
        const double dt = R > 0.0 ? exponential(engine, R) : kNever;
        if (t + dt >= next_break) {
            // Memoryless restart at the schedule breakpoint.
            res.J += U1 * (next_break - t);
            c_acc += C * (next_break - t);
            t = next_break;
            load_segment(++segment);
            continue;
        }
        t += dt;
        res.J += U1 * dt;
        c_acc += C * dt;

        const double r = uniform01(engine) * R;
        NodeId node;
        JumpCause cause;
        if (r < C) {
            cause = JumpCause::Control;
            if (feedback) {
                const auto target = feedback_target(*feedback, conf);
                node = target ? *target : nth_zero(conf, uniform_index(engine, n - conf.ones()));
            } else {
                node = static_cast<NodeId>(control.sample(r));
            }
        } else {
            const std::size_t slot = spread.sample(r - C);
            node = static_cast<NodeId>(slot % n);
            cause = slot < n ? JumpCause::SpreadUp : JumpCause::SpreadDown;
        }

        if (options.observer) {
            EventInfo info;
            info.time = t;
            info.node = node;
            info.cause = cause;
            info.before = &conf;
            info.B = B;
            info.C = C;
            info.total_u = U1;
            info.total_rate = R;
            options.observer(info);
        }

        conf.flip(g, node);
        ++res.events;
        if (cause == JumpCause::Control) ++res.Nc;

        const auto nb = g.neighbors(node);
        if (2 * (nb.size() + 1) * spread.depth() > spread.internal_nodes()) {
            spread.stage(node, beta * conf.up_weight(node));
            spread.stage(n + node, (1.0 - beta) * conf.down_weight(node));
            for (NodeId j : nb) {
                spread.stage(j, beta * conf.up_weight(j));
                spread.stage(n + j, (1.0 - beta) * conf.down_weight(j));
            }
            spread.rebuild();
        } else {
            spread.set(node, beta * conf.up_weight(node));
            spread.set(n + node, (1.0 - beta) * conf.down_weight(node));
            for (NodeId j : nb) {
                spread.set(j, beta * conf.up_weight(j));
                spread.set(n + j, (1.0 - beta) * conf.down_weight(j));
            }
        }
        if (!feedback) control.set(node, conf.state(node) ? 0.0 : (*u)[node]);

        if (options.record_jumps)
            res.jumps.push_back({t, B, c_acc, conf.ones(), conf.boundary(), cause, node});
        c_acc = 0.0;
    }

    res.T = t;
    res.complete = true;
    res.final = std::move(conf);
    return res;
}

void write_trajectory(std::ostream& out, const SimResult& result) {
    char buf[128];
    for (std::size_t h = 0; h < result.jumps.size(); ++h) {
        const auto& j = result.jumps[h];
        std::snprintf(buf, sizeof buf, "%zu %.17g %zu %.17g ", h + 1, j.time, j.ones_after, j.boundary_after);
        out << buf << to_string(j.cause) << '\n';
    }
}

}  // namespace evospread

#include "evospread/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "evospread/errors.hpp"
#include "evospread/graph_io.hpp"

namespace evospread {

namespace {

std::string bare_message(const Error& e) {
    std::string s = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    return s.rfind(prefix, 0) == 0 ? s.substr(prefix.size()) : s;
}

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
    std::size_t t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(t, jobs));
}

}  // namespace

bool is_random_kind(const std::string& kind) { return kind == "sbm" || kind == "er"; }

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("graph")) {
        const auto& g = j.at("graph");
        c.graph.kind = g.value("kind", c.graph.kind);
        c.graph.n = g.value("n", c.graph.n);
        c.graph.alpha = g.value("alpha", c.graph.alpha);
        c.graph.p = g.value("p", c.graph.p);
        c.graph.c = g.value("c", c.graph.c);
        c.graph.L = g.value("L", c.graph.L);
        c.graph.fixed_graph = g.value("fixed_graph", c.graph.fixed_graph);
        c.graph.path = g.value("path", c.graph.path);
        c.graph.degree_scale = g.value("degree_scale", c.graph.degree_scale);
    }
    c.beta = j.value("beta", c.beta);
    if (j.contains("policy")) {
        const auto& p = j.at("policy");
        c.policy.kind = p.value("kind", c.policy.kind);
        c.policy.u = p.value("u", c.policy.u);
        c.policy.schedule = p.value("schedule", c.policy.schedule);
        c.policy.K = p.value("K", c.policy.K);
        if (p.contains("target")) c.policy.target = parse_target_rule(p.at("target").get<std::string>());
    }
    c.x0 = j.value("x0", c.x0);
    c.replications = j.value("replications", c.replications);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.record_jumps = j.value("record_jumps", c.record_jumps);
    c.threads = j.value("threads", c.threads);
    c.max_events = j.value("max_events", c.max_events);
    return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
    return {
        {"graph",
         {{"kind", c.graph.kind},
          {"n", c.graph.n},
          {"alpha", c.graph.alpha},
          {"p", c.graph.p},
          {"c", c.graph.c},
          {"L", c.graph.L},
          {"fixed_graph", c.graph.fixed_graph},
          {"path", c.graph.path},
          {"degree_scale", c.graph.degree_scale}}},
        {"beta", c.beta},
        {"policy",
         {{"kind", c.policy.kind},
          {"u", c.policy.u},
          {"schedule", c.policy.schedule},
          {"K", c.policy.K},
          {"target", std::string(to_string(c.policy.target))}}},
        {"x0", c.x0},
        {"replications", c.replications},
        {"master_seed", c.master_seed},
        {"record_jumps", c.record_jumps},
        {"max_events", c.max_events},
    };
}

Graph build_graph(const GraphSpec& s, Engine& engine) {
    if (s.kind == "complete") return complete(s.n, s.alpha);
    if (s.kind == "ring") return ring(s.n, s.alpha);
    if (s.kind == "sbm") {
        SbmParams prm{s.n, s.c, s.p, s.L, s.alpha};
        if (s.degree_scale == "np") prm.delta = static_cast<double>(s.n) * s.p;
        else if (s.degree_scale != "realized")
            throw Error(ErrorKind::InvalidParams, "degree_scale must be realized or np");
        return sbm(prm, engine);
    }
    if (s.kind == "er") return erdos_renyi(s.n, s.p, s.alpha, engine);
    if (s.kind == "path") return path(s.n, s.alpha);
    if (s.kind == "path2") return path(2, s.alpha);
    if (s.kind == "star") return star(s.n, s.alpha);
    if (s.kind == "file") return load_graph(s.path);
    throw Error(ErrorKind::InvalidParams, "unknown graph kind '" + s.kind + "'");
}

ControlPolicy build_policy(const PolicySpec& s, std::size_t n) {
    if (s.kind == "constant") return ConstantPolicy{parse_sparse_rates(s.u, n)};
    if (s.kind == "openloop") return parse_schedule(s.schedule, n);
    if (s.kind == "feedback") return FeedbackPolicy{s.K, s.target, FeedbackLaw::BoundaryCompensating};
    if (s.kind == "fixed-rate") return FeedbackPolicy{s.K, s.target, FeedbackLaw::FixedRate};
    throw Error(ErrorKind::InvalidParams, "unknown policy kind '" + s.kind + "'");
}

std::vector<std::uint8_t> build_x0(const std::string& text, std::size_t n) {
    std::vector<std::uint8_t> x(n, 0);
    if (text.empty()) return x;
    if (text.size() == n && text.find_first_not_of("01") == std::string::npos) {
        for (std::size_t i = 0; i < n; ++i) x[i] = text[i] == '1';
        return x;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad x0 entry '" + item + "'");
        }
        if (pos != item.size()) throw Error(ErrorKind::ParseError, "bad x0 entry '" + item + "'");
        if (v >= n) throw Error(ErrorKind::InvalidParams, "x0 node out of range");
        x[v] = 1;
    }
    return x;
}

Estimate estimate(std::span<const double> samples) {
    Estimate e;
    const std::size_t k = samples.size();
    if (k == 0) {
        e.mean = e.ci_lo = e.ci_hi = std::numeric_limits<double>::quiet_NaN();
        return e;
    }
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(k);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    e.mean = mean;
    e.se = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k)) : 0.0;
    e.ci_lo = mean - kZ90 * e.se;
    e.ci_hi = mean + kZ90 * e.se;
    return e;
}

ExperimentResult run(const ExperimentConfig& config) {
    if (config.replications < 1) throw Error(ErrorKind::InvalidParams, "replications must be at least 1");
    ExperimentResult out;
    out.config = config;
    out.axis = static_cast<double>(config.graph.n);

    const bool per_rep_graph = is_random_kind(config.graph.kind) && !config.graph.fixed_graph;
    Graph shared;
    if (!per_rep_graph) {
        Engine ge = make_stream(config.master_seed, 0, StreamTag::FixedGraph);
        shared = build_graph(config.graph, ge);
    }
    const std::size_t reps = config.replications;
    out.reps.resize(reps);
    if (config.record_jumps) out.runs.resize(reps);

    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::size_t err_index = reps;
    std::exception_ptr err;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= reps) return;
            {
                std::lock_guard lock(err_mu);
                if (err && err_index < i) return;
            }
            try {
                Graph local;
                if (per_rep_graph) {
                    Engine ge = make_stream(config.master_seed, i, StreamTag::Graph);
                    local = build_graph(config.graph, ge);
                }
                const Graph& g = per_rep_graph ? local : shared;
                const auto policy = build_policy(config.policy, g.size());
                const auto x0 = build_x0(config.x0, g.size());
                Engine engine = make_stream(config.master_seed, i, StreamTag::Simulation);
                SimOptions opts;
                opts.record_jumps = config.record_jumps;
                opts.max_events = config.max_events;
                SimResult r = simulate(g, config.beta, policy, x0, engine, opts);
                if (!r.complete)
                    throw Error(ErrorKind::MaxEventsExceeded,
                                "no absorption within " + std::to_string(config.max_events) + " events");
                out.reps[i] = {r.T, r.J, r.Nc, r.events};
                if (config.record_jumps) out.runs[i] = std::move(r);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };

    const std::size_t nthreads = worker_count(config.threads, reps);
    if (nthreads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (err) {
        try {
            std::rethrow_exception(err);
        } catch (const Error& e) {
            throw Error(e.kind(), "replication " + std::to_string(err_index) + ": " + bare_message(e));
        }
    }

    std::vector<double> T(reps), J(reps), N(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        T[i] = out.reps[i].T;
        J[i] = out.reps[i].J;
        N[i] = static_cast<double>(out.reps[i].Nc);
    }
    out.T = estimate(T);
    out.J = estimate(J);
    out.Nc = estimate(N);
    return out;
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::N: return "n";
    case SweepAxis::K: return "K";
    case SweepAxis::Beta: return "beta";
    }
    return "n";
}

SweepAxis parse_sweep_axis(const std::string& text) {
    if (text == "n") return SweepAxis::N;
    if (text == "K") return SweepAxis::K;
    if (text == "beta") return SweepAxis::Beta;
    throw Error(ErrorKind::ParseError, "unknown sweep axis '" + text + "'");
}

SweepTable sweep(const ExperimentConfig& config, SweepAxis axis, std::span<const double> values) {
    SweepTable table;
    table.axis_name = to_string(axis);
    for (double v : values) {
        ExperimentConfig c = config;
        switch (axis) {
        case SweepAxis::N:
            if (!(v >= 1.0) || v != std::floor(v)) throw Error(ErrorKind::InvalidParams, "n values must be integers");
            c.graph.n = static_cast<std::size_t>(v);
            break;
        case SweepAxis::K: c.policy.K = v; break;
        case SweepAxis::Beta: c.beta = v; break;
        }
        auto r = run(c);
        r.axis = v;
        table.rows.push_back(std::move(r));
    }
    return table;
}

std::vector<std::pair<double, double>> tradeoff(const SweepTable& table) {
    std::vector<std::pair<double, double>> out;
    for (const auto& r : table.rows) out.emplace_back(r.J.mean, r.T.mean);
    return out;
}

}  // namespace evospread

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "evospread/bounds.hpp"
#include "evospread/emit.hpp"
#include "evospread/errors.hpp"
#include "evospread/figures.hpp"
#include "evospread/graph_io.hpp"
#include "evospread/harness.hpp"
#include "evospread/oracle.hpp"
#include "evospread/profiles.hpp"

using namespace evospread;
using nlohmann::json;

namespace {

// Flag values; applied on top of the optional --config file.
struct Flags {
    std::string config_path;
    std::string graph;
    std::size_t n = 0;
    double alpha = 1.0, p = 0.1, c = 0.4;
    std::size_t L = 5;
    double beta = 0.8;
    std::string policy, u, schedule_path, target, x0;
    double K = 0.25;
    std::size_t reps = 1;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out, format = "csv";
    bool fixed_graph = false;
    std::string degree_scale;

    CLI::Option *o_graph{}, *o_n{}, *o_alpha{}, *o_p{}, *o_c{}, *o_L{}, *o_beta{}, *o_policy{}, *o_u{},
        *o_schedule{}, *o_K{}, *o_target{}, *o_x0{}, *o_reps{}, *o_seed{}, *o_threads{}, *o_fixed{}, *o_scale{};
};

void add_graph_flags(CLI::App* app, Flags& f) {
    f.o_graph = app->add_option("--graph", f.graph,
                                "graph: complete | ring | sbm | er | path | path2 | star | file:<path>");
    f.o_n = app->add_option("--n", f.n, "node count");
    f.o_alpha = app->add_option("--alpha", f.alpha, "scaling constant alpha; link weights alpha/Delta (rate per unit time)");
    f.o_p = app->add_option("--p", f.p, "link probability (sbm intra-block, er)");
    f.o_c = app->add_option("--c", f.c, "sbm first-block fraction in (0, 1/2]");
    f.o_L = app->add_option("--L", f.L, "sbm inter-block link count");
    f.o_scale = app->add_option("--degree-scale", f.degree_scale, "sbm weight divisor: realized (max degree) | np")
                    ->check(CLI::IsMember({"realized", "np"}));
    f.o_fixed = app->add_flag("--fixed-graph", f.fixed_graph, "share one random graph across replications");
}

void add_model_flags(CLI::App* app, Flags& f) {
    f.o_beta = app->add_option("--beta", f.beta, "conflict-win probability of the novel state, in (1/2, 1]");
    f.o_policy = app->add_option("--policy", f.policy, "control: constant | openloop | feedback | fixed-rate");
    f.o_u = app->add_option("--u", f.u, "constant control rates `rate@node,...` (per unit time)");
    f.o_schedule = app->add_option("--schedule", f.schedule_path,
                                   "open-loop schedule file, lines `start_time rate@node,...` (time units, rates per unit time)");
    f.o_K = app->add_option("--K", f.K, "feedback gain K (rate per unit time)");
    f.o_target = app->add_option("--target", f.target, "feedback target: max-contact | lowest-index | random-zero");
    f.o_x0 = app->add_option("--x0", f.x0, "initial 1-nodes as `i,j,...` or a 0/1 string (default all 0)");
}

void add_run_flags(CLI::App* app, Flags& f) {
    f.o_reps = app->add_option("--reps", f.reps, "replications (count)");
    f.o_seed = app->add_option("--seed", f.seed, "master seed (falls back to EVOSPREAD_SEED, then entropy)");
    f.o_threads = app->add_option("--threads", f.threads, "worker threads (0: available parallelism)");
}

void add_config_flag(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config_path, "experiment JSON; flags override its values");
}

std::uint64_t resolve_seed(const Flags& f, std::optional<std::uint64_t> from_config = std::nullopt) {
    std::uint64_t seed;
    if (f.o_seed && f.o_seed->count()) {
        seed = f.seed;
    } else if (from_config) {
        seed = *from_config;
    } else if (const char* env = std::getenv("EVOSPREAD_SEED"); env && *env) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "EVOSPREAD_SEED is not an unsigned integer");
        }
    } else {
        seed = entropy_seed();
    }
    std::cerr << "master_seed=" << seed << '\n';
    return seed;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig make_config(const Flags& f) {
    ExperimentConfig c;
    std::optional<std::uint64_t> config_seed;
    if (!f.config_path.empty()) {
        json j;
        try {
            j = json::parse(read_file(f.config_path));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
        }
        c = config_from_json(j);
        if (j.contains("master_seed")) config_seed = c.master_seed;
    }
    auto given = [](CLI::Option* o) { return o && o->count() > 0; };
    if (given(f.o_graph)) {
        if (f.graph.rfind("file:", 0) == 0) {
            c.graph.kind = "file";
            c.graph.path = f.graph.substr(5);
        } else {
            c.graph.kind = f.graph;
        }
    }
    if (given(f.o_n)) c.graph.n = f.n;
    if (given(f.o_alpha)) c.graph.alpha = f.alpha;
    if (given(f.o_p)) c.graph.p = f.p;
    if (given(f.o_c)) c.graph.c = f.c;
    if (given(f.o_L)) c.graph.L = f.L;
    if (given(f.o_fixed)) c.graph.fixed_graph = f.fixed_graph;
    if (given(f.o_scale)) c.graph.degree_scale = f.degree_scale;
    if (given(f.o_beta)) c.beta = f.beta;
    if (given(f.o_policy)) c.policy.kind = f.policy;
    if (given(f.o_u)) c.policy.u = f.u;
    if (given(f.o_schedule)) c.policy.schedule = read_file(f.schedule_path);
    if (given(f.o_K)) c.policy.K = f.K;
    if (given(f.o_target)) c.policy.target = parse_target_rule(f.target);
    if (given(f.o_x0)) c.x0 = f.x0;
    if (given(f.o_reps)) c.replications = f.reps;
    else if (f.config_path.empty()) c.replications = f.reps;
    if (given(f.o_threads)) c.threads = f.threads;
    if (c.graph.kind == "path2") c.graph.n = 2;
    c.master_seed = resolve_seed(f, config_seed);
    return c;
}

Graph single_graph(const ExperimentConfig& c) {
    Engine ge = make_stream(c.master_seed, 0, StreamTag::FixedGraph);
    return build_graph(c.graph, ge);
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

int cmd_gen(const Flags& f) {
    const auto c = make_config(f);
    const Graph g = single_graph(c);
    if (f.out.empty()) {
        write_graph(std::cout, g);
    } else {
        save_graph(f.out, g);
    }
    std::cerr << "nodes=" << g.size() << " edges=" << g.edge_count() << " max_degree=" << g.max_degree() << '\n';
    return 0;
}

int cmd_simulate(const Flags& f, const std::string& trajectory) {
    auto c = make_config(f);
    c.record_jumps = !trajectory.empty();
    const auto r = run(c);
    if (!trajectory.empty()) {
        std::ofstream out(trajectory);
        if (!out) throw Error(ErrorKind::IoError, "cannot open '" + trajectory + "'");
        write_trajectory(out, r.runs.front());
    }
    if (c.replications == 1) {
        const auto& x = r.reps.front();
        print({{"T", x.T}, {"J", x.J}, {"Nc", x.Nc}, {"events", x.events}, {"master_seed", c.master_seed}});
    } else {
        auto j = to_json(r);
        j.erase("replications");
        j["master_seed"] = c.master_seed;
        print(j);
    }
    return 0;
}

int cmd_bounds(const Flags& f, std::optional<double> gamma) {
    const auto c = make_config(f);
    json reports = json::array();
    auto add = [&](const BoundReport& b) { reports.push_back(to_json(b)); };
    const bool feedback = c.policy.kind == "feedback";
    const bool sbm_kind = c.graph.kind == "sbm";

    std::optional<Profiles> prof;
    std::optional<Graph> graph;
    std::size_t n = c.graph.n;
    double alpha = c.graph.alpha;
    if (!sbm_kind) {
        graph = single_graph(c);
        n = graph->size();
        alpha = graph->alpha() > 0 ? graph->alpha() : c.graph.alpha;
        if (graph->tag() == GraphTag::Complete || graph->tag() == GraphTag::Ring)
            prof = profiles(*graph, ProfileMode::ClosedForm);
        else if (n <= kDefaultExhaustiveLimit)
            prof = profiles(*graph, ProfileMode::Exact);
    }
    std::vector<double> phi;
    if (prof) phi = prof->phi;
    else if (sbm_kind) phi = sbm_phi_bound(n, c.graph.c, c.graph.p, alpha, c.graph.L);

    if (feedback) {
        if (!phi.empty()) {
            const auto fb = feedback_bounds(phi, c.policy.K, c.beta);
            add(fb.time_upper);
            add(fb.cost_upper);
        }
        if (sbm_kind && c.policy.K < c.graph.c * alpha * c.graph.p / 2.0) {
            const auto s = sbm_feedback_upper(c.beta, c.policy.K, c.graph.c, c.graph.p, alpha, n);
            add(s.time_upper);
            add(s.cost_upper);
        }
    } else if (c.policy.kind == "constant") {
        const auto u = parse_sparse_rates(c.policy.u, n);
        double total = 0.0;
        std::vector<NodeId> support;
        for (std::size_t i = 0; i < n; ++i) {
            total += u[i];
            if (u[i] > 0) support.push_back(static_cast<NodeId>(i));
        }
        if (!phi.empty()) add(corollary1_upper(phi, c.beta, total));
        if (prof && !support.empty() && support.size() < n) {
            add(corollary3_lower(prof->eta, support.size()));
            add(corollary4_lower(prof->eta, support.size(), total));
        }
        if (graph && n <= kDefaultExhaustiveLimit) add(corollary5_lower(*graph, support));
        if (!support.empty()) add(log_lower(alpha, n, support.size()));
        if (gamma) add(expander_upper(c.beta, total, *gamma, n));
        if (sbm_kind) {
            const auto s = sbm_bounds(c.beta, total, n, c.graph.c, c.graph.p, c.graph.L, alpha);
            add(s.lower);
            add(s.upper);
        }
    } else {
        throw Error(ErrorKind::UnsupportedPolicy, "bounds cover constant and feedback control");
    }
    print({{"master_seed", c.master_seed}, {"moran_lower", moran_lower(c.beta)}, {"bounds", reports}});
    return 0;
}

int cmd_oracle(const Flags& f) {
    auto c = make_config(f);
    const Graph g = single_graph(c);
    const auto policy = build_policy(c.policy, g.size());
    const auto x0 = build_x0(c.x0, g.size());
    const auto sol = solve_exact(g, c.beta, policy);
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < x0.size(); ++i)
        if (x0[i]) mask |= std::uint64_t{1} << i;
    json j = {{"E_T", sol.time_at(mask)}, {"E_J", sol.cost_at(mask)}, {"residual", sol.residual},
              {"master_seed", c.master_seed}};
    if (f.o_reps && f.o_reps->count() && c.replications > 0) {
        c.graph.fixed_graph = true;
        const auto r = run(c);
        auto z = [](double mean, double se, double exact) { return se > 0 ? (mean - exact) / se : 0.0; };
        j["mc"] = {{"replications", c.replications},
                   {"mean_T", r.T.mean},
                   {"stderr_T", r.T.se},
                   {"z_T", z(r.T.mean, r.T.se, sol.time_at(mask))},
                   {"mean_J", r.J.mean},
                   {"stderr_J", r.J.se},
                   {"z_J", z(r.J.mean, r.J.se, sol.cost_at(mask))}};
    }
    print(j);
    return 0;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad sweep value '" + item + "'");
        }
    }
    if (v.empty()) throw Error(ErrorKind::ParseError, "empty --values");
    return v;
}

int cmd_sweep(const Flags& f, const std::string& axis, const std::string& values) {
    const auto c = make_config(f);
    const auto table = sweep(c, parse_sweep_axis(axis), parse_values(values));
    const Format fmt = parse_format(f.format);
    if (!f.out.empty()) {
        emit(table, fmt, f.out);
    } else if (fmt == Format::Csv) {
        write_csv(std::cout, table);
    } else if (fmt == Format::Json) {
        print(to_json(table));
    } else {
        Plot plot{"mean spreading time", table.axis_name, "T", {series_from(table, "Monte Carlo")}, {}};
        write_svg(std::cout, plot);
    }
    if (axis == "K") {
        std::cerr << "mean_J,mean_T\n";
        for (const auto& [J, T] : tradeoff(table)) std::cerr << J << ',' << T << '\n';
    }
    return 0;
}

int cmd_fig(const Flags& f, int which) {
    FigureOptions o;
    o.master_seed = resolve_seed(f);
    if (f.o_reps && f.o_reps->count()) o.replications = f.reps;
    o.threads = f.threads;
    o.out_dir = f.out.empty() ? "." : f.out;
    o.fixed_graph = f.fixed_graph;
    if (!f.degree_scale.empty()) o.degree_scale = f.degree_scale;
    const auto rep = reproduce_fig(which, o);
    for (const auto& file : rep.files) std::cout << file << '\n';
    std::cerr << "bound consistency: " << (rep.all_consistent() ? "pass" : "fail") << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controlled evolutionary spreading on weighted networks"};
    app.require_subcommand(1);
    // One flag set per subcommand so option handles are not shared.
    Flags fg, fs, fb, fo, fw, fr;

    auto* gen = app.add_subcommand("gen", "generate a graph and write its edge list");
    add_graph_flags(gen, fg);
    fg.o_seed = gen->add_option("--seed", fg.seed, "master seed (falls back to EVOSPREAD_SEED, then entropy)");
    add_config_flag(gen, fg);
    gen->add_option("--out", fg.out, "output path (default stdout)");

    std::string trajectory;
    auto* sim = app.add_subcommand("simulate", "simulate trajectories and print T, J, Nc as JSON");
    add_graph_flags(sim, fs);
    add_model_flags(sim, fs);
    add_run_flags(sim, fs);
    add_config_flag(sim, fs);
    sim->add_option("--trajectory", trajectory, "write `h t_h a_h b_h cause` lines of the first replication");

    std::optional<double> gamma;
    auto* bnd = app.add_subcommand("bounds", "print the applicable bounds as JSON");
    add_graph_flags(bnd, fb);
    add_model_flags(bnd, fb);
    fb.o_seed = bnd->add_option("--seed", fb.seed, "master seed for random graphs");
    add_config_flag(bnd, fb);
    bnd->add_option("--gamma", gamma, "expansion constant for the expander bound (rate per unit time)");

    auto* orc = app.add_subcommand("oracle", "exact expected time and cost on small graphs");
    add_graph_flags(orc, fo);
    add_model_flags(orc, fo);
    add_run_flags(orc, fo);
    add_config_flag(orc, fo);

    std::string axis = "n", values;
    auto* swp = app.add_subcommand("sweep", "run one experiment per axis value");
    add_graph_flags(swp, fw);
    add_model_flags(swp, fw);
    add_run_flags(swp, fw);
    add_config_flag(swp, fw);
    swp->add_option("--axis", axis, "n | K | beta")->check(CLI::IsMember({"n", "K", "beta"}));
    swp->add_option("--values", values, "comma-separated axis values")->required();
    swp->add_option("--out", fw.out, "output path (default stdout)");
    swp->add_option("--format", fw.format, "csv | json | svg")->check(CLI::IsMember({"csv", "json", "svg"}));

    int fig = 3;
    auto* rf = app.add_subcommand("reproduce-fig", "rerun a figure experiment with bound overlays");
    rf->add_option("--fig", fig, "figure number")->check(CLI::IsMember({3, 4, 5, 6}));
    add_run_flags(rf, fr);
    rf->add_flag("--fixed-graph", fr.fixed_graph, "share one random graph across replications");
    rf->add_option("--out", fr.out, "output directory (default .)");
    rf->add_option("--degree-scale", fr.degree_scale, "sbm weight divisor: np (default) | realized")
        ->check(CLI::IsMember({"realized", "np"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return cmd_gen(fg);
        if (*sim) return cmd_simulate(fs, trajectory);
        if (*bnd) return cmd_bounds(fb, gamma);
        if (*orc) return cmd_oracle(fo);
        if (*swp) return cmd_sweep(fw, axis, values);
        if (*rf) return cmd_fig(fr, fig);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

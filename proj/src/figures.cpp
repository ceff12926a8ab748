#include "evospread/figures.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "evospread/errors.hpp"
#include "evospread/profiles.hpp"

namespace evospread {

namespace {

constexpr double kSbmC = 0.4, kSbmP = 0.1, kBetaSbm = 0.8, kBetaComplete = 0.7;
constexpr std::size_t kSbmL = 5;
constexpr std::size_t kTradeoffN = 800;

BoundCheck check(const ExperimentResult& r, const std::string& series, const BoundReport& b, bool on_cost = false) {
    const Estimate& e = on_cost ? r.J : r.T;
    BoundCheck c{r.axis, series, b.name, b.kind, b.value, e.mean, e.half_width(), true};
    if (b.kind == BoundKind::Lower) c.consistent = b.value - c.half_width <= e.mean;
    if (b.kind == BoundKind::Upper) c.consistent = e.mean <= b.value + c.half_width;
    return c;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

bool FigureReport::all_consistent() const {
    for (const auto& c : checks)
        if (!c.consistent) return false;
    return true;
}

std::vector<double> default_grid(int which) {
    std::vector<double> g;
    switch (which) {
    case 3:
        for (int n = 50; n <= 1000; n += 50) g.push_back(n);
        break;
    case 4:
    case 5:
        for (int n = 200; n <= 2000; n += 200) g.push_back(n);
        break;
    case 6: g = {0.01, 0.02, 0.03, 0.05, 0.075, 0.1, 0.15, 0.2, 0.3, 0.5}; break;
    default: throw Error(ErrorKind::InvalidParams, "figures 3 to 6 only");
    }
    return g;
}

ExperimentConfig figure_config(int which, double axis, const FigureOptions& o) {
    ExperimentConfig c;
    c.master_seed = o.master_seed;
    c.replications = o.replications;
    c.threads = o.threads;
    c.graph.alpha = 1.0;
    c.graph.fixed_graph = o.fixed_graph;
    c.policy.kind = "constant";
    c.policy.u = "1@0";
    if (which == 3) {
        c.graph.kind = "complete";
        c.graph.n = static_cast<std::size_t>(axis);
        c.beta = kBetaComplete;
        return c;
    }
    c.graph.kind = "sbm";
    c.graph.c = kSbmC;
    c.graph.p = kSbmP;
    c.graph.L = kSbmL;
    c.graph.degree_scale = o.degree_scale;
    c.beta = kBetaSbm;
    if (which == 4) {
        c.graph.n = static_cast<std::size_t>(axis);
    } else if (which == 5) {
        c.graph.n = static_cast<std::size_t>(axis);
        c.policy.kind = "feedback";
        c.policy.K = 0.25;
    } else if (which == 6) {
        c.graph.n = kTradeoffN;
        c.policy.kind = "feedback";
        c.policy.K = axis;
    } else {
        throw Error(ErrorKind::InvalidParams, "figures 3 to 6 only");
    }
    return c;
}

void write_bound_checks(std::ostream& out, const std::vector<BoundCheck>& checks) {
    out << "axis,series,bound,kind,value,mean,ci_half_width,consistent\n";
    for (const auto& c : checks)
        out << num(c.axis) << ',' << c.series << ',' << c.bound << ',' << to_string(c.kind) << ',' << num(c.value)
            << ',' << num(c.mean) << ',' << num(c.half_width) << ',' << (c.consistent ? "pass" : "fail") << '\n';
}

FigureReport reproduce_fig(int which, const FigureOptions& o) {
    FigureReport rep;
    rep.which = which;
    const std::vector<double> grid = o.grid.empty() ? default_grid(which) : o.grid;
    const SweepAxis axis = which == 6 ? SweepAxis::K : SweepAxis::N;
    const ExperimentConfig base = figure_config(which, grid.front(), o);

    auto add_curve = [&](const std::string& name, auto&& f) {
        Curve c{name, {}};
        for (double x : grid) c.points.emplace_back(x, f(x));
        rep.curves.push_back(std::move(c));
    };

    switch (which) {
    case 3: {
        rep.series_names = {"constant"};
        rep.tables.push_back(sweep(base, axis, grid));
        auto upper = [&](std::size_t n) {
            return corollary1_upper(profiles(complete(n, 1.0), ProfileMode::ClosedForm).phi, kBetaComplete, 1.0);
        };
        add_curve("log_lower", [&](double n) { return log_lower(1.0, static_cast<std::size_t>(n), 1).value; });
        add_curve("corollary1_upper", [&](double n) { return upper(static_cast<std::size_t>(n)).value; });
        for (const auto& r : rep.tables[0].rows) {
            const auto n = static_cast<std::size_t>(r.axis);
            rep.checks.push_back(check(r, "constant", log_lower(1.0, n, 1)));
            rep.checks.push_back(check(r, "constant", upper(n)));
        }
        break;
    }
    case 4: {
        rep.series_names = {"constant"};
        rep.tables.push_back(sweep(base, axis, grid));
        auto b = [](double n) { return sbm_bounds(kBetaSbm, 1.0, static_cast<std::size_t>(n), kSbmC, kSbmP, kSbmL, 1.0); };
        add_curve("sbm_lower", [&](double n) { return b(n).lower.value; });
        add_curve("sbm_upper", [&](double n) { return b(n).upper.value; });
        for (const auto& r : rep.tables[0].rows) {
            rep.checks.push_back(check(r, "constant", b(r.axis).lower));
            rep.checks.push_back(check(r, "constant", b(r.axis).upper));
        }
        break;
    }
    case 5: {
        rep.series_names = {"feedback", "constant"};
        rep.tables.push_back(sweep(base, axis, grid));
        ExperimentConfig constant = base;
        constant.policy.kind = "constant";
        rep.tables.push_back(sweep(constant, axis, grid));
        auto fb = [&](double n) {
            const auto phi = sbm_phi_bound(static_cast<std::size_t>(n), kSbmC, kSbmP, 1.0, kSbmL);
            return feedback_bounds(phi, base.policy.K, kBetaSbm);
        };
        auto lower = [](double n) {
            return sbm_bounds(kBetaSbm, 1.0, static_cast<std::size_t>(n), kSbmC, kSbmP, kSbmL, 1.0).lower;
        };
        add_curve("sbm_lower", [&](double n) { return lower(n).value; });
        add_curve("feedback_time_upper", [&](double n) { return fb(n).time_upper.value; });
        for (const auto& r : rep.tables[0].rows) {
            rep.checks.push_back(check(r, "feedback", fb(r.axis).time_upper));
            rep.checks.push_back(check(r, "feedback", fb(r.axis).cost_upper, true));
        }
        for (const auto& r : rep.tables[1].rows) rep.checks.push_back(check(r, "constant", lower(r.axis)));
        break;
    }
    case 6: {
        rep.series_names = {"feedback", "fixed-rate"};
        rep.tables.push_back(sweep(base, axis, grid));
        ExperimentConfig fixed = base;
        fixed.policy.kind = "fixed-rate";
        rep.tables.push_back(sweep(fixed, axis, grid));
        const auto phi = sbm_phi_bound(kTradeoffN, kSbmC, kSbmP, 1.0, kSbmL);
        for (const auto& r : rep.tables[0].rows) {
            const auto fb = feedback_bounds(phi, r.axis, kBetaSbm);
            rep.checks.push_back(check(r, "feedback", fb.time_upper));
            rep.checks.push_back(check(r, "feedback", fb.cost_upper, true));
        }
        break;
    }
    default: throw Error(ErrorKind::InvalidParams, "figures 3 to 6 only");
    }

    if (o.out_dir.empty()) return rep;
    std::filesystem::create_directories(o.out_dir);
    const std::string stem = (std::filesystem::path(o.out_dir) / ("fig" + std::to_string(which))).string();
    auto put = [&](const std::string& path, const std::string& body) {
        write_text_file(path, body);
        rep.files.push_back(path);
    };
    for (std::size_t s = 0; s < rep.tables.size(); ++s) {
        std::ostringstream csv;
        write_csv(csv, rep.tables[s]);
        put(stem + (s == 0 ? "" : "_" + rep.series_names[s]) + ".csv", csv.str());
    }
    {
        std::ostringstream b;
        write_bound_checks(b, rep.checks);
        put(stem + "_bounds.csv", b.str());
    }
    nlohmann::json j = {{"figure", which}, {"series", nlohmann::json::object()}, {"curves", nlohmann::json::array()}};
    for (std::size_t s = 0; s < rep.tables.size(); ++s) j["series"][rep.series_names[s]] = to_json(rep.tables[s]);
    for (const auto& c : rep.curves) j["curves"].push_back({{"name", c.name}, {"points", c.points}});
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"axis", c.axis},   {"series", c.series}, {"bound", c.bound},
                          {"value", c.value}, {"mean", c.mean},     {"consistent", c.consistent}});
    j["bound_checks"] = checks;
    put(stem + ".json", j.dump(2) + "\n");

    Plot plot;
    if (which == 6) {
        // J against T for both series; the trade-off table goes alongside.
        plot.title = "cost versus spreading time, n = 800";
        plot.xlabel = "mean J";
        plot.ylabel = "mean T";
        std::ostringstream t;
        t << "series,K,mean_J,mean_T\n";
        for (std::size_t s = 0; s < rep.tables.size(); ++s) {
            Series ser{rep.series_names[s], {}};
            for (const auto& r : rep.tables[s].rows) {
                ser.points.push_back({r.J.mean, r.T.mean, r.T.ci_lo, r.T.ci_hi});
                t << rep.series_names[s] << ',' << num(r.axis) << ',' << num(r.J.mean) << ',' << num(r.T.mean) << '\n';
            }
            plot.series.push_back(std::move(ser));
        }
        put(stem + "_tradeoff.csv", t.str());
    } else {
        plot.title = which == 3 ? "complete graphs, beta = 0.7" : "two-block SBM, p = 0.1";
        plot.xlabel = "n";
        plot.ylabel = "mean T";
        for (std::size_t s = 0; s < rep.tables.size(); ++s)
            plot.series.push_back(series_from(rep.tables[s], rep.series_names[s]));
        plot.curves = rep.curves;
    }
    std::ostringstream svg;
    write_svg(svg, plot);
    put(stem + ".svg", svg.str());
    return rep;
}

}  // namespace evospread

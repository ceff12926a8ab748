#include "evospread/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "evospread/errors.hpp"

namespace evospread {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string o;
    for (char ch : s) {
        switch (ch) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += ch;
        }
    }
    return o;
}

nlohmann::json estimate_json(const Estimate& e) {
    return {{"mean", e.mean}, {"stderr", e.se}, {"ci90", {e.ci_lo, e.ci_hi}}};
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    if (text == "svg") return Format::Svg;
    throw Error(ErrorKind::ParseError, "unknown format '" + text + "'");
}

void write_csv(std::ostream& out, const ExperimentResult& r) {
    out << num(r.axis) << ',' << num(r.T.mean) << ',' << num(r.T.se) << ',' << num(r.T.ci_lo) << ','
        << num(r.T.ci_hi) << ',' << num(r.J.mean) << ',' << num(r.J.se) << ',' << num(r.J.ci_lo) << ','
        << num(r.J.ci_hi) << ',' << r.config.replications << ',' << r.config.master_seed << '\n';
}

void write_csv(std::ostream& out, const SweepTable& table) {
    out << kCsvHeader << '\n';
    for (const auto& r : table.rows) write_csv(out, r);
}

nlohmann::json to_json(const ExperimentResult& r) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& x : r.reps) reps.push_back({{"T", x.T}, {"J", x.J}, {"Nc", x.Nc}});
    return {{"config", to_json(r.config)}, {"axis", r.axis},          {"T", estimate_json(r.T)},
            {"J", estimate_json(r.J)},     {"Nc", estimate_json(r.Nc)}, {"replications", reps}};
}

nlohmann::json to_json(const SweepTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) rows.push_back(to_json(r));
    return {{"axis", table.axis_name}, {"rows", rows}};
}

Series series_from(const SweepTable& table, const std::string& name) {
    Series s{name, {}};
    for (const auto& r : table.rows) s.points.push_back({r.axis, r.T.mean, r.T.ci_lo, r.T.ci_hi});
    return s;
}

void write_svg(std::ostream& out, const Plot& plot) {
    constexpr double W = 720, H = 480, ML = 70, MR = 160, MT = 40, MB = 55;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = 0.0, y1 = -x0;
    auto take = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    for (const auto& s : plot.series)
        for (const auto& p : s.points) {
            take(p.x, p.lo);
            take(p.x, p.hi);
        }
    for (const auto& c : plot.curves)
        for (const auto& [x, y] : c.points) take(x, y);
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y1 = 1;
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
    const double pw = W - ML - MR, ph = H - MT - MB;
    auto sx = [&](double x) { return ML + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return MT + ph - (y - y0) / (y1 - y0) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(plot.title) << "</text>\n";
    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << pw << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = x0 + (x1 - x0) * k / 5.0, yv = y0 + (y1 - y0) * k / 5.0;
        char lx[32], ly[32];
        std::snprintf(lx, sizeof lx, "%g", xv);
        std::snprintf(ly, sizeof ly, "%.4g", yv);
        out << "<text x=\"" << px(sx(xv)) << "\" y=\"" << px(MT + ph + 18) << "\" text-anchor=\"middle\">" << lx << "</text>\n";
        out << "<text x=\"" << px(ML - 6) << "\" y=\"" << px(sy(yv) + 4) << "\" text-anchor=\"end\">" << ly << "</text>\n";
    }
    out << "<text x=\"" << px(ML + pw / 2) << "\" y=\"" << px(H - 12) << "\" text-anchor=\"middle\">" << escape(plot.xlabel) << "</text>\n";
    out << "<text transform=\"translate(16," << px(MT + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.ylabel) << "</text>\n";

    std::size_t colour = 0;
    double legend_y = MT + 10;
    auto legend = [&](const std::string& name, const char* col) {
        out << "<rect x=\"" << px(W - MR + 12) << "\" y=\"" << px(legend_y - 8) << "\" width=\"10\" height=\"10\" fill=\"" << col << "\"/>"
            << "<text x=\"" << px(W - MR + 28) << "\" y=\"" << px(legend_y + 1) << "\">" << escape(name) << "</text>\n";
        legend_y += 18;
    };
    for (const auto& c : plot.curves) {
        const char* col = kPalette[colour++ % 6];
        out << "<polyline class=\"curve\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : c.points)
            if (std::isfinite(x) && std::isfinite(y)) out << px(sx(x)) << ',' << px(sy(y)) << ' ';
        out << "\"/>\n";
        legend(c.name, col);
    }
    for (const auto& s : plot.series) {
        const char* col = kPalette[colour++ % 6];
        out << "<g class=\"series\" stroke=\"" << col << "\" fill=\"" << col << "\">\n";
        for (const auto& p : s.points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            out << "<line x1=\"" << px(sx(p.x)) << "\" x2=\"" << px(sx(p.x)) << "\" y1=\"" << px(sy(p.lo)) << "\" y2=\"" << px(sy(p.hi)) << "\"/>"
                << "<rect x=\"" << px(sx(p.x) - 3) << "\" y=\"" << px(sy(p.y) - 3) << "\" width=\"6\" height=\"6\"/>\n";
        }
        out << "</g>\n";
        legend(s.name, col);
    }
    out << "</svg>\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

void emit(const SweepTable& table, Format format, const std::string& path, const std::vector<Curve>& curves) {
    std::ostringstream out;
    switch (format) {
    case Format::Csv: write_csv(out, table); break;
    case Format::Json: out << to_json(table).dump(2) << '\n'; break;
    case Format::Svg: {
        Plot plot;
        plot.title = "mean spreading time";
        plot.xlabel = table.axis_name;
        plot.ylabel = "T";
        plot.series.push_back(series_from(table, "Monte Carlo"));
        plot.curves = curves;
        write_svg(out, plot);
        break;
    }
    }
    write_text_file(path, out.str());
}

}  // namespace evospread

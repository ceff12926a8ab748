#include "evospread/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "evospread/errors.hpp"

namespace evospread {

namespace {

std::string exact_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_graph(std::ostream& out, const Graph& g) {
    out << g.size() << ' ' << exact_real(g.alpha()) << ' ' << to_string(g.tag()) << '\n';
    for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << exact_real(e.w) << '\n';
}

Graph read_graph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "missing header line");
    std::istringstream header(line);
    std::size_t n = 0;
    double alpha = 0.0;
    std::string tag;
    if (!(header >> n >> alpha >> tag)) throw Error(ErrorKind::ParseError, "bad header: " + line);
    std::vector<Edge> edges;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        long long i = -1, j = -1;
        double w = 0.0;
        if (!(row >> i >> j >> w) || i < 0 || j < 0)
            throw Error(ErrorKind::ParseError, "bad edge on line " + std::to_string(lineno));
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), w});
    }
    auto g = Graph::build(n, edges, alpha, parse_graph_tag(tag));
    return g;
}

void save_graph(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
    write_graph(out, g);
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    return read_graph(in);
}

}  // namespace evospread

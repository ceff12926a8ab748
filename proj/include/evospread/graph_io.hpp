#pragma once

#include <iosfwd>
#include <string>

#include "evospread/graph.hpp"

namespace evospread {

/// Edge-list text format: a header line `n alpha tag`, then one `i j w`
/// line per edge. Reals are printed with 17 significant digits so that a
/// write/read cycle reproduces every weight bit for bit.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

void save_graph(const std::string& path, const Graph& g);
Graph load_graph(const std::string& path);

}  // namespace evospread

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evospread/bounds.hpp"
#include "evospread/emit.hpp"
#include "evospread/harness.hpp"

namespace evospread {

struct FigureOptions {
    std::uint64_t master_seed = 0;
    std::size_t replications = 200;
    std::size_t threads = 0;
    std::string out_dir;        ///< empty: nothing written
    std::vector<double> grid;   ///< overrides the default axis values
    bool fixed_graph = false;
    /// SBM weight divisor. n*p reproduces the published SBM curves; the
    /// realized maximum degree gives visibly faster spread.
    std::string degree_scale = "np";
};

struct BoundCheck {
    double axis = 0.0;
    std::string series;
    std::string bound;
    BoundKind kind = BoundKind::Upper;
    double value = 0.0;
    double mean = 0.0;
    double half_width = 0.0;
    bool consistent = true;  ///< lower - CI <= mean <= upper + CI
};

struct FigureReport {
    int which = 0;
    std::vector<std::string> series_names;
    std::vector<SweepTable> tables;  ///< one per series, same axis
    std::vector<Curve> curves;
    std::vector<BoundCheck> checks;
    std::vector<std::string> files;

    bool all_consistent() const;
};

std::vector<double> default_grid(int which);

/// Base configuration of a figure's first series at one axis value.
ExperimentConfig figure_config(int which, double axis, const FigureOptions& options);

/// which in {3, 4, 5, 6}.
FigureReport reproduce_fig(int which, const FigureOptions& options);

void write_bound_checks(std::ostream& out, const std::vector<BoundCheck>& checks);

}  // namespace evospread

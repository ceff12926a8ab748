#pragma once

#include <cstddef>
#include <span>

#include "evospread/simulate.hpp"

namespace evospread {

struct JumpDiagnostics {
    std::size_t runs = 0;              ///< runs that reached jump h
    std::size_t identity_samples = 0;  ///< of those, runs with B_{h-1} > 0
    double mean_identity = 0.0;        ///< mean of B_{h-1} (T_h - T_{h-1}) + c_h; NaN without samples
    double stderr_identity = 0.0;
    double control_fraction = 0.0;
    double mean_c = 0.0;
    double stderr_c = 0.0;
};

/// Statistics of the h-th jump (h >= 1) across recorded runs. Throws
/// InsufficientData when fewer than two runs reached jump h.
JumpDiagnostics jump_diagnostics(std::span<const SimResult> results, std::size_t h);

}  // namespace evospread

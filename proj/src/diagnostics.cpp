#include "evospread/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "evospread/errors.hpp"

namespace evospread {

namespace {

struct Moments {
    std::size_t k = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double v) {
        ++k;
        const double d = v - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (v - mean);
    }
    double stderr_of_mean() const {
        if (k < 2) return std::numeric_limits<double>::quiet_NaN();
        return std::sqrt(m2 / static_cast<double>(k - 1) / static_cast<double>(k));
    }
};

}  // namespace

JumpDiagnostics jump_diagnostics(std::span<const SimResult> results, std::size_t h) {
    if (h == 0) throw Error(ErrorKind::InvalidParams, "jump index starts at 1");
    Moments identity, c;
    std::size_t control = 0;
    for (const auto& r : results) {
        if (r.jumps.size() < h) continue;
        const auto& jump = r.jumps[h - 1];
        const double prev = h == 1 ? 0.0 : r.jumps[h - 2].time;
        c.add(jump.control_accum);
        if (jump.cause == JumpCause::Control) ++control;
        if (jump.boundary_before > 0.0) identity.add(jump.boundary_before * (jump.time - prev) + jump.control_accum);
    }
    if (c.k < 2)
        throw Error(ErrorKind::InsufficientData, "fewer than two recorded runs reach jump " + std::to_string(h));
    JumpDiagnostics d;
    d.runs = c.k;
    d.identity_samples = identity.k;
    d.mean_identity = identity.k ? identity.mean : std::numeric_limits<double>::quiet_NaN();
    d.stderr_identity = identity.stderr_of_mean();
    d.control_fraction = static_cast<double>(control) / static_cast<double>(c.k);
    d.mean_c = c.mean;
    d.stderr_c = c.stderr_of_mean();
    return d;
}

}  // namespace evospread

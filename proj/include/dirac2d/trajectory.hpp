#pragma once

#include <string>
#include <vector>

#include "dirac2d/spinor.hpp"

namespace dirac2d {

// Time-sampled spinor evolution on a fixed grid, uniformly spaced.
// times[0] may be negative (two-sided evolution is supported).
struct Trajectory {
    std::vector<double> times;
    std::vector<SpinorField> states;
    GridSpec grid;

    std::size_t frames() const { return times.size(); }
    double t_step() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    double window() const { return times.empty() ? 0.0 : times.back() - times.front(); }
    void validate() const;

    // linear interpolation in time of one spinor component at a grid node
    // is left to the consumers; they work on whole frames
};

// Flat binary checkpoint: a JSON header line (grid metadata, frame
// count) followed by little-endian float64 interleaved complex samples,
// row-major, component by component, per time slice.
void save_trajectory(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory(const std::string& path);

// free evolution of a (+,-) data pair, sampled every store_every steps
Trajectory free_trajectory(const SpinorField& plus_data, const SpinorField& minus_data,
                           double t_from, double t_to, double step);

} // namespace dirac2d

#pragma once

#include "dirac2d/modulation.hpp"

namespace dirac2d {

// L^p_t L^q_x by Riemann sums over the stored window; sup for infinity
double mixed_norm(const Trajectory& traj, double p, double q);

// Parseval sum with weight <xi>^{2 sigma}
double sobolev_norm(const SpinorField& f, double sigma);
double sobolev_norm(const ScalarField& f, double sigma);

// l^q over m of 2^{bm} || Q_m^{+-} traj ||_{L^2} on the resolvable range
double xbq_norm(const Trajectory& traj, int sign, double b, double q);

// Certified lower bound of the V^2 seminorm plus the L^inf_t L^2_x term:
// exact maximization over increasing subsequences of the stored times
// with at most n_partitions increments.
double v2_lower_bound(const Trajectory& traj, int sign, int n_partitions);

} // namespace dirac2d

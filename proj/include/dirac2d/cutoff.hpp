#pragma once

#include <cmath>
#include <vector>

#include "dirac2d/field.hpp"

namespace dirac2d {

// Smooth transition S: 0 for u <= 0, 1 for u >= 1, C^infinity, built
// from the exp(-1/u) glue. Arguments below 1e-8 take the flat branch to
// avoid underflow in the quotient.
double smooth_step(double u);

// The fixed radial cutoff: even, rho = 1 on [-1,1], supp in (-2,2).
double rho(double s);

// chi_k(y) = rho(2^{-k}|y|) - rho(2^{-k+1}|y|); annulus [2^{k-1}, 2^{k+1}]
double chi_k(double abs_y, int k);
// chi tilde = chi_{k-1} + chi_k + chi_{k+1}
double chi_tilde_k(double abs_y, int k);
// chi_{<=k}(y) = rho(2^{-k}|y|)
double chi_leq_k(double abs_y, int k);
double chi_tilde_leq_k(double abs_y, int k);

// Angular caps at level l: centers equispaced on the circle, cutoffs
// homogeneous of degree zero, normalized so they sum to one exactly.
struct Cap {
    int level = 1;
    int index = 0;

    Cap() = default;
    Cap(int l, int i);

    static int count(int level);
    double center_angle() const;
    void center(double& c1, double& c2) const;
    double width() const { return std::ldexp(1.0, -level); }
};

// Smallest absolute angular difference, in [0, pi].
double angle_between(double a1, double a2, double b1, double b2);

// eta_kappa(xi): the normalized cap cutoff (zero at xi = 0)
double eta_cap(const Cap& cap, double xi1, double xi2);
// wider companion, = 1 on supp(eta_kappa)
double eta_tilde_cap(const Cap& cap, double xi1, double xi2);

// caps at `level` whose eta can be nonzero at angle theta
std::vector<Cap> caps_near_angle(int level, double theta);

// Radial sub-slices of the annulus used by the frequency-localized
// kernels: alpha_j is supported in (j-1) 2^{-W} <= s <= (j+1) 2^{-W} in
// the rescaled variable s = 2^{-k}|xi|, and the family sums to one on
// [2^-2, 2^2]. W is the desk-scale slice width exponent.
double alpha_slice(int j, int width_log2, double s);
int slice_j_min(int width_log2);
int slice_j_max(int width_log2);

} // namespace dirac2d

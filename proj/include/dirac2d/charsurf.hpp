#pragma once

#include "dirac2d/frame.hpp"

namespace dirac2d {

struct SurfaceRoots {
    double h_plus;
    double h_minus;
    double delta; // discriminant
};

// Solve the characteristic-surface equation for tau_Theta at fixed
// (xi1_Theta, xi2_Theta):
//   (lam^2-1)/(lam^2+1) tau^2 - 4 lam/(lam^2+1) tau xi1
//     + (1-lam^2)/(lam^2+1) xi1^2 - xi2^2 - 1 = 0,
// with discriminant Delta = (lam^2+1)^2 xi1^2 + (lam^4-1)(xi2^2+1).
// lambda = 1 degenerates to a linear equation and yields one root.
SurfaceRoots char_surface_roots(const Frame& frame, double xi1_theta, double xi2_theta);

// residual of the quadratic at a frame-coordinate point
double quadeq_residual(const Frame& frame, double tau_theta, double xi1_theta,
                       double xi2_theta);

// tau_{Theta^-} = Theta_{lambda,-omega} . (tau, xi)
double tau_theta_minus(const Frame& frame, double tau, double xi1, double xi2);

} // namespace dirac2d

#include "dirac2d/charsurf.hpp"

#include <cmath>
#include <stdexcept>

namespace dirac2d {

SurfaceRoots char_surface_roots(const Frame& frame, double xi1_theta, double xi2_theta) {
    double lam = frame.lambda;
    double l2 = lam * lam;
    double delta = (l2 + 1.0) * (l2 + 1.0) * xi1_theta * xi1_theta +
                   (l2 * l2 - 1.0) * (xi2_theta * xi2_theta + 1.0);
    if (std::abs(l2 - 1.0) < 1e-12) {
        // linear case: -4 lam/(lam^2+1) tau xi1 = xi2^2 + 1
        if (xi1_theta == 0.0)
            throw std::domain_error("char_surface_roots: degenerate lambda=1 with xi1_Theta=0");
        double tau = -(xi2_theta * xi2_theta + 1.0) * (l2 + 1.0) / (4.0 * lam * xi1_theta);
        return {tau, tau, delta};
    }
    if (delta < 0.0)
        throw std::domain_error("char_surface_roots: negative discriminant; the point is off "
                                "the reachable cone");
    double sq = std::sqrt(delta);
    double denom = l2 - 1.0;
    return {(2.0 * lam * xi1_theta + sq) / denom, (2.0 * lam * xi1_theta - sq) / denom, delta};
}

double quadeq_residual(const Frame& frame, double tau_theta, double xi1_theta,
                       double xi2_theta) {
    double lam = frame.lambda;
    double l2 = lam * lam;
    return (l2 - 1.0) / (l2 + 1.0) * tau_theta * tau_theta -
           4.0 * lam / (l2 + 1.0) * tau_theta * xi1_theta +
           (1.0 - l2) / (l2 + 1.0) * xi1_theta * xi1_theta - xi2_theta * xi2_theta - 1.0;
}

double tau_theta_minus(const Frame& frame, double tau, double xi1, double xi2) {
    double s = 1.0 / std::sqrt(1.0 + frame.lambda * frame.lambda);
    return s * (frame.lambda * tau - frame.omega1 * xi1 - frame.omega2 * xi2);
}

} // namespace dirac2d

#include "dirac2d/resonance.hpp"

#include <cmath>

#include "dirac2d/spectral.hpp"

namespace dirac2d {

namespace {

// b1 b2 - |dot| without cancellation, via the Lagrange identity
//   (1+|xi|^2)(1+|eta|^2) - dot^2 = 1 + |xi|^2 + |eta|^2 + cross^2
double bracket_product_minus_absdot(double xi1, double xi2, double eta1, double eta2,
                                    double b1, double b2, double dot) {
    double cross = xi1 * eta2 - xi2 * eta1;
    double num = 1.0 + xi1 * xi1 + xi2 * xi2 + eta1 * eta1 + eta2 * eta2 + cross * cross;
    return num / (b1 * b2 + std::abs(dot));
}

} // namespace

double resonance(double xi1a, double xi1b, double xi2a, double xi2b, int s1, int s2) {
    double b1 = bracket_norm(std::hypot(xi1a, xi1b));
    double b2 = bracket_norm(std::hypot(xi2a, xi2b));
    double bd = bracket_norm(std::hypot(xi1a - xi2a, xi1b - xi2b));
    double dot = xi1a * xi2a + xi1b * xi2b;
    double pm = bracket_product_minus_absdot(xi1a, xi1b, xi2a, xi2b, b1, b2, dot);

    if ((s1 >= 0) == (s2 >= 0)) {
        // <xi1-xi2> - |<xi1> - <xi2>| = (bd^2 - (b1-b2)^2)/(bd + |b1-b2|);
        // the numerator equals 2(b1 b2 - dot) - 1, stable when dot > 0
        double num = dot > 0.0 ? 2.0 * pm - 1.0 : 2.0 * (b1 * b2 - dot) - 1.0;
        return num / (bd + std::abs(b1 - b2));
    }
    // <xi1-xi2> - (<xi1> + <xi2>): numerator is -(1 + 2(b1 b2 + dot)),
    // stable when dot < 0
    double num = dot < 0.0 ? -(1.0 + 2.0 * pm) : -(1.0 + 2.0 * (b1 * b2 + dot));
    return num / (bd + b1 + b2);
}

} // namespace dirac2d
